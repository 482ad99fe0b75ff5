#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <type_traits>
#include <utility>

#include "moebius/errors.hpp"
#include "moebius/numeric.hpp"

namespace moebius {

/// A value of [0, inf]: a nonnegative scalar or the symbol inf.
template <class Scalar>
class ExtScalar {
public:
  ExtScalar() = default;

  ExtScalar(Scalar v) : value_(std::move(v)) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_floating_point_v<Scalar>) {
      if (std::isnan(value_)) throw std::domain_error("ExtScalar: NaN");
      if (std::isinf(value_)) {
        if (value_ < 0) throw std::domain_error("ExtScalar: negative value");
        value_ = Scalar(0);
        infinite_ = true;
        return;
      }
    }
    if (value_ < 0) throw std::domain_error("ExtScalar: negative value");
  }

  template <class T>
    requires(std::is_arithmetic_v<T> && !std::is_same_v<T, Scalar>)
  ExtScalar(T v) : ExtScalar(Scalar(v)) {}  // NOLINT(google-explicit-constructor)

  static ExtScalar infinity() {
    ExtScalar r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  bool is_zero() const { return !infinite_ && value_ == 0; }

  /// The finite value; zero when infinite.
  const Scalar& value() const { return value_; }

  double to_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : ScalarTraits<Scalar>::to_double(value_);
  }

  friend bool operator==(const ExtScalar& a, const ExtScalar& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend bool operator<(const ExtScalar& a, const ExtScalar& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>(const ExtScalar& a, const ExtScalar& b) { return b < a; }
  friend bool operator<=(const ExtScalar& a, const ExtScalar& b) { return !(b < a); }
  friend bool operator>=(const ExtScalar& a, const ExtScalar& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const ExtScalar& a) {
    if (a.infinite_) return os << "inf";
    return os << a.value_;
  }

private:
  Scalar value_{};
  bool infinite_ = false;
};

/// Zero and inf match structurally, finite values within the tolerance.
template <class Scalar>
bool near(const ExtScalar<Scalar>& a, const ExtScalar<Scalar>& b, Tolerance tol = {}) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
  if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
  return near(a.value(), b.value(), tol);
}

/// coeff * inf^infdeg, the carrier of "infinite distances cancel" bookkeeping.
/// A zero coefficient is the absolute zero and always has infdeg 0.
template <class Scalar>
class FormalProduct {
public:
  FormalProduct() = default;
  FormalProduct(Scalar coeff, int infdeg) : coeff_(std::move(coeff)), infdeg_(infdeg) {
    if (coeff_ < 0 || infdeg_ < 0) throw std::domain_error("FormalProduct: negative field");
    if (coeff_ == 0) infdeg_ = 0;
  }
  explicit FormalProduct(const ExtScalar<Scalar>& a)
      : FormalProduct(a.is_infinite() ? Scalar(1) : a.value(), a.is_infinite() ? 1 : 0) {}

  const Scalar& coeff() const { return coeff_; }
  int infdeg() const { return infdeg_; }
  bool is_zero() const { return coeff_ == 0; }

  friend FormalProduct operator*(const FormalProduct& a, const FormalProduct& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.coeff_ * b.coeff_, a.infdeg_ + b.infdeg_};
  }

  friend bool operator==(const FormalProduct&, const FormalProduct&) = default;

  friend std::ostream& operator<<(std::ostream& os, const FormalProduct& p) {
    os << p.coeff_;
    if (p.infdeg_ > 0) os << "*inf^" << p.infdeg_;
    return os;
  }

private:
  Scalar coeff_{};
  int infdeg_ = 0;
};

/// a*b where any zero factor annihilates (0 * inf = 0).
template <class Scalar>
FormalProduct<Scalar> fp_mul(const ExtScalar<Scalar>& a, const ExtScalar<Scalar>& b) {
  return FormalProduct<Scalar>(a) * FormalProduct<Scalar>(b);
}

/// a/b after cancelling the common power of inf; x/0 = inf for x > 0.
template <class Scalar>
ExtScalar<Scalar> fp_ratio(const FormalProduct<Scalar>& a, const FormalProduct<Scalar>& b) {
  if (a.is_zero() && b.is_zero()) throw IndeterminateRatio();
  if (a.is_zero()) return Scalar(0);
  if (b.is_zero()) return ExtScalar<Scalar>::infinity();
  if (a.infdeg() > b.infdeg()) return ExtScalar<Scalar>::infinity();
  if (a.infdeg() < b.infdeg()) return Scalar(0);
  return Scalar(a.coeff() / b.coeff());
}

// Multiplicative arithmetic on [0, inf] used by ratio-level Moebius sums.
// 0 * inf, 0 / 0 and inf / inf are the multiplicative images of (+inf) + (-inf).

template <class Scalar>
std::optional<ExtScalar<Scalar>> checked_mul(const ExtScalar<Scalar>& a, const ExtScalar<Scalar>& b) {
  if ((a.is_zero() && b.is_infinite()) || (a.is_infinite() && b.is_zero())) return std::nullopt;
  if (a.is_infinite() || b.is_infinite()) return ExtScalar<Scalar>::infinity();
  return ExtScalar<Scalar>(Scalar(a.value() * b.value()));
}

template <class Scalar>
ExtScalar<Scalar> ext_inv(const ExtScalar<Scalar>& a) {
  if (a.is_infinite()) return Scalar(0);
  if (a.is_zero()) return ExtScalar<Scalar>::infinity();
  return Scalar(Scalar(1) / a.value());
}

template <class Scalar>
std::optional<ExtScalar<Scalar>> checked_div(const ExtScalar<Scalar>& a, const ExtScalar<Scalar>& b) {
  if ((a.is_zero() && b.is_zero()) || (a.is_infinite() && b.is_infinite())) return std::nullopt;
  return checked_mul(a, ext_inv(b));
}

template <class Scalar>
ExtScalar<Scalar> ext_mul(const ExtScalar<Scalar>& a, const ExtScalar<Scalar>& b) {
  if (auto r = checked_mul(a, b)) return *r;
  throw IndeterminateSum("0 * inf in an extended sum");
}

template <class Scalar>
ExtScalar<Scalar> ext_div(const ExtScalar<Scalar>& a, const ExtScalar<Scalar>& b) {
  if (auto r = checked_div(a, b)) return *r;
  throw IndeterminateSum("0/0 or inf/inf in an extended sum");
}

/// An element of [-inf, +inf], used for logarithmic coordinates.
class ExtLog {
public:
  enum class Kind { finite, pos_inf, neg_inf };

  ExtLog() = default;
  ExtLog(double v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v)) throw std::domain_error("ExtLog: NaN");
    if (std::isinf(v)) {
      kind_ = v > 0 ? Kind::pos_inf : Kind::neg_inf;
    } else {
      value_ = v;
    }
  }
  static ExtLog pos_inf() { return ExtLog(std::numeric_limits<double>::infinity()); }
  static ExtLog neg_inf() { return ExtLog(-std::numeric_limits<double>::infinity()); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  double value() const {
    switch (kind_) {
      case Kind::pos_inf: return std::numeric_limits<double>::infinity();
      case Kind::neg_inf: return -std::numeric_limits<double>::infinity();
      default: return value_;
    }
  }

  ExtLog operator-() const {
    switch (kind_) {
      case Kind::pos_inf: return neg_inf();
      case Kind::neg_inf: return pos_inf();
      default: return ExtLog(-value_);
    }
  }

  friend ExtLog operator+(const ExtLog& a, const ExtLog& b) {
    if ((a.kind_ == Kind::pos_inf && b.kind_ == Kind::neg_inf) ||
        (a.kind_ == Kind::neg_inf && b.kind_ == Kind::pos_inf))
      throw IndeterminateSum("(+inf) + (-inf)");
    return ExtLog(a.value() + b.value());
  }
  friend ExtLog operator-(const ExtLog& a, const ExtLog& b) { return a + (-b); }

  friend bool operator==(const ExtLog& a, const ExtLog& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.value_ == b.value_);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtLog& a) {
    switch (a.kind_) {
      case Kind::pos_inf: return os << "inf";
      case Kind::neg_inf: return os << "-inf";
      default: return os << a.value_;
    }
  }

private:
  double value_ = 0.0;
  Kind kind_ = Kind::finite;
};

/// Finite values compare with an absolute floor of tol for values near 0.
inline bool near(const ExtLog& a, const ExtLog& b, Tolerance tol = {}) {
  if (!a.is_finite() || !b.is_finite()) return a.kind() == b.kind();
  const double diff = std::abs(a.value() - b.value());
  return diff <= tol.rel * std::max({1.0, std::abs(a.value()), std::abs(b.value())});
}

/// ln on [0, inf] with ln(0) = -inf and ln(inf) = inf.
template <class Scalar>
ExtLog ext_ln(const ExtScalar<Scalar>& a) {
  if (a.is_infinite()) return ExtLog::pos_inf();
  if (a.is_zero()) return ExtLog::neg_inf();
  return ExtLog(std::log(to_double(a.value())));
}

inline ExtScalar<double> ext_exp(const ExtLog& x) {
  switch (x.kind()) {
    case ExtLog::Kind::pos_inf: return ExtScalar<double>::infinity();
    case ExtLog::Kind::neg_inf: return 0.0;
    default: return std::exp(x.value());
  }
}

}  // namespace moebius

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "moebius/extscalar.hpp"

namespace moebius {

// Three encodings of a cross-ratio value:
//   ProjTriple  - a point (a:b:c) of the closed positive triangle, stored as the
//                 representative with a+b+c = 1;
//   RatioTriple - (alpha, beta, gamma) with alpha*beta*gamma = 1, or one of
//                 (1,inf,0), (0,1,inf), (inf,0,1);
//   LogTriple   - (x, y, z) with x+y+z = 0, or one of
//                 (0,inf,-inf), (-inf,0,inf), (inf,-inf,0).

template <class Scalar>
class ProjTriple {
public:
  using Vector = Eigen::Matrix<Scalar, 3, 1>;

  /// Wraps an already canonical representative; throws if it is not in the closed triangle.
  static ProjTriple from_canonical(const Vector& v, Tolerance tol = {}) {
    int zeros = 0;
    for (int i = 0; i < 3; ++i) {
      if (v(i) < 0) throw std::invalid_argument("ProjTriple: negative entry");
      if (v(i) == 0) ++zeros;
    }
    if (!near(Scalar(v.sum()), Scalar(1), tol)) throw std::invalid_argument("ProjTriple: entries do not sum to 1");
    if (zeros > 1) throw DegenerateTriple();
    ProjTriple t;
    t.v_ = v;
    if (zeros == 1) {
      const Scalar half = Scalar(1) / Scalar(2);
      for (int i = 0; i < 3; ++i) {
        if (v(i) == 0) continue;
        if (!near(Scalar(v(i)), half, tol)) throw DegenerateTriple();
        t.v_(i) = half;
      }
    }
    return t;
  }

  const Scalar& operator[](int i) const { return v_(i); }
  const Vector& coords() const { return v_; }

  /// Index of the zero entry for the three boundary points.
  std::optional<int> zero_index() const {
    for (int i = 0; i < 3; ++i)
      if (v_(i) == 0) return i;
    return std::nullopt;
  }
  bool is_boundary() const { return zero_index().has_value(); }

  friend std::ostream& operator<<(std::ostream& os, const ProjTriple& t) {
    return os << '(' << t.v_(0) << " : " << t.v_(1) << " : " << t.v_(2) << ')';
  }

private:
  Vector v_ = Vector::Constant(Scalar(1) / Scalar(3));
};

template <class Scalar>
bool near(const ProjTriple<Scalar>& a, const ProjTriple<Scalar>& b, Tolerance tol = {}) {
  for (int i = 0; i < 3; ++i) {
    if ((a[i] == 0) != (b[i] == 0)) return false;
    if (!near(a[i], b[i], tol)) return false;
  }
  return true;
}

/// Reduces three formal products to the sum-one representative. Entries whose
/// infinity degree is below the maximal one become zero.
template <class Scalar>
ProjTriple<Scalar> normalize_delta(const std::array<FormalProduct<Scalar>, 3>& raw, Tolerance tol = {}) {
  int top = -1;
  for (const auto& p : raw)
    if (!p.is_zero()) top = std::max(top, p.infdeg());
  if (top < 0) throw DegenerateTriple();
  typename ProjTriple<Scalar>::Vector v;
  for (int i = 0; i < 3; ++i) v(i) = raw[i].infdeg() == top ? raw[i].coeff() : Scalar(0);
  const Scalar sum = v.sum();
  v /= sum;
  return ProjTriple<Scalar>::from_canonical(v, tol);
}

template <class Scalar>
struct RatioTriple {
  std::array<ExtScalar<Scalar>, 3> e;

  const ExtScalar<Scalar>& operator[](int i) const { return e[i]; }
  ExtScalar<Scalar>& operator[](int i) { return e[i]; }

  bool is_finite() const { return e[0].is_finite() && e[1].is_finite() && e[2].is_finite(); }

  friend bool operator==(const RatioTriple&, const RatioTriple&) = default;

  friend std::ostream& operator<<(std::ostream& os, const RatioTriple& t) {
    return os << '(' << t.e[0] << ", " << t.e[1] << ", " << t.e[2] << ')';
  }
};

template <class Scalar>
bool near(const RatioTriple<Scalar>& a, const RatioTriple<Scalar>& b, Tolerance tol = {}) {
  for (int i = 0; i < 3; ++i)
    if (!near(a[i], b[i], tol)) return false;
  return true;
}

/// Index k of the extended point whose entry k equals 1: (1,inf,0) -> 0, (0,1,inf) -> 1, (inf,0,1) -> 2.
template <class Scalar>
std::optional<int> extended_index(const RatioTriple<Scalar>& t) {
  for (int k = 0; k < 3; ++k) {
    if (t[k] == ExtScalar<Scalar>(Scalar(1)) && t[(k + 1) % 3].is_infinite() && t[(k + 2) % 3].is_zero())
      return k;
  }
  return std::nullopt;
}

template <class Scalar>
bool is_valid(const RatioTriple<Scalar>& t, Tolerance tol = {}) {
  if (extended_index(t)) return true;
  for (const auto& x : t.e)
    if (x.is_infinite() || x.is_zero()) return false;
  return near(Scalar(t[0].value() * t[1].value() * t[2].value()), Scalar(1), tol);
}

/// Componentwise reciprocal; the multiplicative form of negating a LogTriple.
template <class Scalar>
RatioTriple<Scalar> reciprocal(const RatioTriple<Scalar>& t) {
  return {{ext_inv(t[0]), ext_inv(t[1]), ext_inv(t[2])}};
}

struct LogTriple {
  std::array<ExtLog, 3> e;

  const ExtLog& operator[](int i) const { return e[i]; }
  ExtLog& operator[](int i) { return e[i]; }

  bool is_finite() const { return e[0].is_finite() && e[1].is_finite() && e[2].is_finite(); }

  LogTriple operator-() const { return {{-e[0], -e[1], -e[2]}}; }

  friend bool operator==(const LogTriple&, const LogTriple&) = default;

  friend std::ostream& operator<<(std::ostream& os, const LogTriple& t) {
    return os << '(' << t.e[0] << ", " << t.e[1] << ", " << t.e[2] << ')';
  }
};

inline bool near(const LogTriple& a, const LogTriple& b, Tolerance tol = {}) {
  for (int i = 0; i < 3; ++i)
    if (!near(a[i], b[i], tol)) return false;
  return true;
}

inline bool is_valid(const LogTriple& t, Tolerance tol = {}) {
  if (t.is_finite()) {
    const double scale = std::max({1.0, std::abs(t[0].value()), std::abs(t[1].value()), std::abs(t[2].value())});
    return std::abs(t[0].value() + t[1].value() + t[2].value()) <= tol.rel * scale;
  }
  for (int k = 0; k < 3; ++k) {
    if (t[k] == ExtLog(0.0) && t[(k + 1) % 3] == ExtLog::pos_inf() && t[(k + 2) % 3] == ExtLog::neg_inf())
      return true;
  }
  return false;
}

/// (a:b:c) -> (b/c, c/a, a/b); the boundary points go to the extended points.
template <class Scalar>
RatioTriple<Scalar> F_forward(const ProjTriple<Scalar>& t) {
  if (auto z = t.zero_index()) {
    RatioTriple<Scalar> r;
    r[*z] = Scalar(1);
    r[(*z + 1) % 3] = ExtScalar<Scalar>::infinity();
    r[(*z + 2) % 3] = Scalar(0);
    return r;
  }
  return {{Scalar(t[1] / t[2]), Scalar(t[2] / t[0]), Scalar(t[0] / t[1])}};
}

/// Inverse of F_forward. Exact scalars use the representative (1/beta : alpha : 1);
/// floating point uses the symmetric cube-root representative.
template <class Scalar>
ProjTriple<Scalar> F_inverse(const RatioTriple<Scalar>& t, Tolerance tol = {}) {
  using Vector = typename ProjTriple<Scalar>::Vector;
  if (auto k = extended_index(t)) {
    Vector v = Vector::Constant(Scalar(1) / Scalar(2));
    v(*k) = Scalar(0);
    return ProjTriple<Scalar>::from_canonical(v, tol);
  }
  if (!is_valid(t, tol)) throw std::invalid_argument("F_inverse: not a ratio triple");
  const Scalar& alpha = t[0].value();
  const Scalar& beta = t[1].value();
  const Scalar& gamma = t[2].value();
  Vector v;
  if constexpr (ScalarTraits<Scalar>::exact) {
    v << Scalar(1) / beta, alpha, Scalar(1);
  } else {
    v << std::cbrt(gamma / beta), std::cbrt(alpha / gamma), std::cbrt(beta / alpha);
  }
  v /= Scalar(v.sum());
  return ProjTriple<Scalar>::from_canonical(v, tol);
}

/// Componentwise logarithm, extended by ln(0) = -inf and ln(inf) = inf.
template <class Scalar>
LogTriple psi(const RatioTriple<Scalar>& t) {
  return {{ext_ln(t[0]), ext_ln(t[1]), ext_ln(t[2])}};
}

/// Componentwise exponential; inverse of psi.
inline RatioTriple<double> phi(const LogTriple& t) {
  return {{ext_exp(t[0]), ext_exp(t[1]), ext_exp(t[2])}};
}

}  // namespace moebius

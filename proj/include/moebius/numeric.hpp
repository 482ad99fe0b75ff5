#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace moebius {

/// Exact rational scalar (GMP backed).
using Rational = boost::multiprecision::mpq_rational;

/// Relative tolerance used by floating-point comparisons. Exact scalars ignore it.
struct Tolerance {
  double rel = 1e-9;
};

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
  static bool near(double a, double b, Tolerance tol) {
    if (a == b) return true;
    return std::abs(a - b) <= tol.rel * std::max(std::abs(a), std::abs(b));
  }
  static std::string to_string(double x);
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static Rational from_double(double x) { return Rational(x); }
  static bool near(const Rational& a, const Rational& b, Tolerance) { return a == b; }
  static std::string to_string(const Rational& x) { return x.str(); }
};

template <class Scalar>
concept LibraryScalar = requires { ScalarTraits<Scalar>::exact; };

template <class Scalar>
double to_double(const Scalar& x) {
  return ScalarTraits<Scalar>::to_double(x);
}

/// Text form of a scalar: "p/q" for rationals, shortest round-trip form for doubles.
template <class Scalar>
std::string to_text_scalar(const Scalar& x) {
  return ScalarTraits<Scalar>::to_string(x);
}

template <class Scalar>
bool near(const Scalar& a, const Scalar& b, Tolerance tol = {}) {
  return ScalarTraits<Scalar>::near(a, b, tol);
}

template <class Scalar>
using DistanceMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Parses "p/q", an integer or a decimal literal into an exact rational.
Rational parse_rational(const std::string& text);

}  // namespace moebius

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "moebius/numeric.hpp"
#include "moebius/space.hpp"

namespace moebius {

/// {0, 1, ..., n-1} with |x - y|.
template <class Scalar = Rational>
FiniteSpace<Scalar> integer_line(std::size_t n) {
  const auto N = static_cast<Eigen::Index>(n);
  DistanceMatrix<Scalar> d(N, N);
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < N; ++i) {
    labels.push_back(std::to_string(i));
    for (Eigen::Index j = 0; j < N; ++j) d(i, j) = Scalar(i > j ? i - j : j - i);
  }
  return FiniteSpace<Scalar>(std::move(labels), std::move(d));
}

/// integer_line(n) with a point at infinity labelled "inf".
template <class Scalar = Rational>
FiniteSpace<Scalar> extended_integer_line(std::size_t n) {
  return integer_line<Scalar>(n).with_infinity_point("inf");
}

/// {k/N : 1 <= k <= N} with |x - y|.
inline FiniteSpace<Rational> punctured_interval(std::size_t N) {
  std::vector<Rational> pts;
  for (std::size_t k = 1; k <= N; ++k) pts.push_back(Rational(static_cast<long>(k), static_cast<long>(N)));
  const auto n = static_cast<Eigen::Index>(pts.size());
  DistanceMatrix<Rational> d(n, n);
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < n; ++i) {
    labels.push_back(pts[static_cast<std::size_t>(i)].str());
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = abs(pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]);
  }
  return FiniteSpace<Rational>(std::move(labels), std::move(d));
}

/// The rationals with |x - y|; samples are integers in [-10, 10].
inline ProceduralSpace<Rational, Rational> rational_line() {
  return ProceduralSpace<Rational, Rational>(
      "line", [](const Rational& x, const Rational& y) { return ExtScalar<Rational>(Rational(abs(x - y))); },
      [](std::mt19937_64& rng) { return Rational(std::uniform_int_distribution<int>(-10, 10)(rng)); },
      [](const Rational& x) { return x.str(); });
}

/// Rationals in [0, 1] with |x - y|; samples are k/1024 with 1 <= k <= 1024.
inline ProceduralSpace<Rational, Rational> unit_interval() {
  return ProceduralSpace<Rational, Rational>(
      "interval", [](const Rational& x, const Rational& y) { return ExtScalar<Rational>(Rational(abs(x - y))); },
      [](std::mt19937_64& rng) { return Rational(std::uniform_int_distribution<int>(1, 1024)(rng), 1024); },
      [](const Rational& x) { return x.str(); });
}

/// A finite space viewed as a procedural one over point indices.
template <class Scalar>
ProceduralSpace<std::size_t, Scalar> as_procedural(const FiniteSpace<Scalar>& sp) {
  auto shared = std::make_shared<const FiniteSpace<Scalar>>(sp);
  return ProceduralSpace<std::size_t, Scalar>(
      "finite", [shared](std::size_t a, std::size_t b) { return shared->dist(a, b); },
      [shared](std::mt19937_64& rng) {
        return std::uniform_int_distribution<std::size_t>(0, shared->size() - 1)(rng);
      },
      [shared](std::size_t a) { return shared->label(a); }, sp.infinity());
}

// Real line with doubled zero. A point is a real value with a sheet tag;
// the tag is 1 or 2 for the two zeros and 0 otherwise.
template <class Scalar>
struct DoubledZeroPoint {
  Scalar x;
  int sheet = 0;
};

template <class Scalar>
Scalar doubled_zero_distance(const DoubledZeroPoint<Scalar>& p, const DoubledZeroPoint<Scalar>& q) {
  if (p.x == 0 && q.x == 0 && p.sheet != q.sheet) return Scalar(1);
  const Scalar diff = p.x - q.x;
  return diff < 0 ? Scalar(-diff) : diff;
}

/// Both zeros "0(1)", "0(2)" followed by the grid points -extent + 2 k extent / grid,
/// k = 0..grid, without 0.
template <class Scalar = Rational>
FiniteSpace<Scalar> doubled_zero_line(const Scalar& extent, std::size_t grid) {
  if (!(extent > 0) || grid < 4) throw std::invalid_argument("doubled_zero_line: needs extent > 0 and grid >= 4");
  std::vector<DoubledZeroPoint<Scalar>> pts = {{Scalar(0), 1}, {Scalar(0), 2}};
  std::vector<std::string> labels = {"0(1)", "0(2)"};
  for (std::size_t k = 0; k <= grid; ++k) {
    const Scalar x = Scalar(-extent + Scalar(2 * static_cast<long>(k)) * extent / Scalar(static_cast<long>(grid)));
    if (x == 0) continue;
    pts.push_back({x, 0});
    labels.push_back(to_text_scalar(x));
  }
  const auto n = static_cast<Eigen::Index>(pts.size());
  DistanceMatrix<Scalar> d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      d(i, j) = i == j ? Scalar(0) : doubled_zero_distance(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
  return FiniteSpace<Scalar>(std::move(labels), std::move(d));
}

// Circle R/4Z without [0]. Points are representatives in (0, 4).
//   |x - y|   on (0,2]^2, [1,3]^2, [2,4)^2, and on ([-1,1] \ {0})^2 using r - 4 for r >= 3;
//   2|x - y|  on (0,1)x(2,3), (2,3)x(0,1), (1,2)x(3,4), (3,4)x(1,2).
// The first matching case in this order decides.
template <class Scalar>
Scalar circle_distance(const Scalar& x, const Scalar& y) {
  auto within = [](const Scalar& v, int lo, int hi, bool lo_open, bool hi_open) {
    return (lo_open ? v > lo : v >= lo) && (hi_open ? v < hi : v <= hi);
  };
  auto both = [&](int lo, int hi, bool lo_open, bool hi_open, const Scalar& a, const Scalar& b) {
    return within(a, lo, hi, lo_open, hi_open) && within(b, lo, hi, lo_open, hi_open);
  };
  auto absdiff = [](const Scalar& a, const Scalar& b) { return a < b ? Scalar(b - a) : Scalar(a - b); };
  if (!within(x, 0, 4, true, true) || !within(y, 0, 4, true, true))
    throw std::domain_error("circle_distance: representatives must lie in (0, 4)");
  if (both(0, 2, true, false, x, y) || both(1, 3, false, false, x, y) || both(2, 4, false, true, x, y))
    return absdiff(x, y);
  const Scalar xr = x >= 3 ? Scalar(x - 4) : x;
  const Scalar yr = y >= 3 ? Scalar(y - 4) : y;
  if (both(-1, 1, false, false, xr, yr)) return absdiff(xr, yr);
  auto open = [&](const Scalar& v, int lo, int hi) { return within(v, lo, hi, true, true); };
  if ((open(x, 0, 1) && open(y, 2, 3)) || (open(x, 2, 3) && open(y, 0, 1)) || (open(x, 1, 2) && open(y, 3, 4)) ||
      (open(x, 3, 4) && open(y, 1, 2)))
    return Scalar(2 * absdiff(x, y));
  throw std::logic_error("circle_distance: pair not covered");
}

/// The grid points 4k/grid, k = 1..grid-1.
template <class Scalar = double>
FiniteSpace<Scalar> circle_space(std::size_t grid) {
  if (grid < 8) throw std::invalid_argument("circle_space: grid must be at least 8");
  std::vector<Scalar> pts;
  for (std::size_t k = 1; k < grid; ++k) {
    if constexpr (ScalarTraits<Scalar>::exact)
      pts.push_back(Scalar(4 * static_cast<long>(k), static_cast<long>(grid)));
    else
      pts.push_back(Scalar(4.0 * static_cast<double>(k) / static_cast<double>(grid)));
  }
  const auto n = static_cast<Eigen::Index>(pts.size());
  DistanceMatrix<Scalar> d(n, n);
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < n; ++i) {
    labels.push_back(to_text_scalar(pts[static_cast<std::size_t>(i)]));
    for (Eigen::Index j = 0; j < n; ++j)
      d(i, j) = i == j ? Scalar(0) : circle_distance(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
  }
  return FiniteSpace<Scalar>(std::move(labels), std::move(d));
}

/// The circle as a procedural space over representatives in (0, 4); samples are uniform.
inline ProceduralSpace<double, double> circle_ambient() {
  return ProceduralSpace<double, double>(
      "circle", [](double x, double y) { return ExtScalar<double>(x == y ? 0.0 : circle_distance(x, y)); },
      [](std::mt19937_64& rng) {
        double v = 0.0;
        while (v == 0.0) v = std::uniform_real_distribution<double>(0.0, 4.0)(rng);
        return v;
      },
      [](double x) { return to_text_scalar(x); });
}

/// Representative in (0, 4) of a real number modulo 4; 0 mod 4 is rejected.
inline double circle_point(double t) {
  double r = std::fmod(t, 4.0);
  if (r < 0) r += 4.0;
  if (r == 0.0) throw std::domain_error("circle_point: [0] is not in the space");
  return r;
}

/// Shortest-path closure of a random symmetric matrix with entries p/q,
/// 1 <= p <= 60, 1 <= q <= 6. Satisfies the triangle inequality exactly.
inline FiniteSpace<Rational> random_metric(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 60), den(1, 6);
  const auto N = static_cast<Eigen::Index>(n);
  DistanceMatrix<Rational> d = DistanceMatrix<Rational>::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = i + 1; j < N; ++j) d(i, j) = d(j, i) = Rational(num(rng), den(rng));
  for (Eigen::Index k = 0; k < N; ++k)
    for (Eigen::Index i = 0; i < N; ++i)
      for (Eigen::Index j = 0; j < N; ++j)
        if (d(i, k) + d(k, j) < d(i, j)) d(i, j) = d(i, k) + d(k, j);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return FiniteSpace<Rational>(std::move(labels), std::move(d));
}

/// Random symmetric matrix with entries 2^e * p/q spread over several orders of
/// magnitude, repaired until d(x,z) <= K max(d(x,y), d(y,z)) holds everywhere.
inline FiniteSpace<Rational> random_quasimetric(std::size_t n, const Rational& K, std::uint64_t seed) {
  if (K < 1) throw std::invalid_argument("random_quasimetric: K must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 40), den(1, 5), expo(0, 8);
  const auto N = static_cast<Eigen::Index>(n);
  DistanceMatrix<Rational> d = DistanceMatrix<Rational>::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = i + 1; j < N; ++j) {
      const Rational v = Rational(num(rng), den(rng)) * Rational(1 << expo(rng));
      d(i, j) = d(j, i) = v;
    }
  bool changed = true;
  while (changed) {
    changed = false;
    for (Eigen::Index x = 0; x < N; ++x)
      for (Eigen::Index z = x + 1; z < N; ++z)
        for (Eigen::Index y = 0; y < N; ++y) {
          if (y == x || y == z) continue;
          const Rational bound = K * (d(x, y) < d(y, z) ? d(y, z) : d(x, y));
          if (d(x, z) > bound) {
            d(x, z) = d(z, x) = bound;
            changed = true;
          }
        }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("q" + std::to_string(i));
  return FiniteSpace<Rational>(std::move(labels), std::move(d));
}

}  // namespace moebius

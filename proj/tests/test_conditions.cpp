#include <doctest.h>

#include "moebius/conditions.hpp"
#include "moebius/fixtures.hpp"
#include "test_util.hpp"

using namespace moebius;
using ER = ExtScalar<Rational>;

namespace {

// All ordered triples of distinct finite points, no shortcuts.
template <class Scalar>
ExtScalar<Scalar> naive_quasi(const FiniteSpace<Scalar>& sp) {
  ExtScalar<Scalar> best(Scalar(1));
  const std::size_t n = sp.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (x == y || y == z || x == z || sp.is_infinity(x) || sp.is_infinity(y) || sp.is_infinity(z)) continue;
        const auto m = std::max(sp.dist(x, y), sp.dist(y, z));
        const ExtScalar<Scalar> r = m.is_zero() ? ExtScalar<Scalar>::infinity() : ExtScalar<Scalar>(Scalar(sp.dist(x, z).value() / m.value()));
        best = std::max(best, r);
      }
  return best;
}

ScanOptions exhaustive() {
  ScanOptions o;
  o.exhaustive_limit = 16;
  return o;
}

}  // namespace

TEST_CASE("quasi constant against the naive triple scan") {
  CHECK(quasi_constant(integer_line(6)) == ER(Rational(2)));
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto a = random_metric(7, seed), b = random_quasimetric(7, Rational(4), seed);
    CHECK(quasi_constant(a) == naive_quasi(a));
    CHECK(quasi_constant(b) == naive_quasi(b));
    CHECK(quasi_constant(a) <= ER(Rational(2)));
    CHECK(quasi_constant(b) <= ER(Rational(4)));
  }
  const auto c = circle_space<Rational>(40);
  CHECK(quasi_constant(c) == naive_quasi(c));
}

TEST_CASE("circle quasi constant is below 12 and stable under grid doubling") {
  const double k360 = quasi_constant(circle_space<double>(360)).value();
  const double k720 = quasi_constant(circle_space<double>(720)).value();
  CHECK(k360 <= 12.0);
  CHECK(k720 <= 12.0);
  CHECK(std::abs(k720 - k360) <= 0.05 * k360);
}

TEST_CASE("quasi constant ignores the point at infinity and handles tiny spaces") {
  const auto sp = integer_line(5).with_infinity_point();
  CHECK(quasi_constant(sp) == ER(Rational(2)));
  const auto r = quasi_report(integer_line(2));
  CHECK(r.margin == ER(Rational(1)));
  CHECK(r.witnesses.empty());
}

TEST_CASE("corner margin is the second largest over the largest coordinate") {
  // integer line 0..3: crt(0,1,2,3) = (1:4:3)/8 gives 3/4, crt(0,2,1,3) = (3:4:1)/8 gives 3/4,
  // and crt(0,1,3,2) = (1:3:4)/8 gives 3/4 as well; the minimum over 0..3 is 3/4.
  const auto m = MoebiusStructure<Rational>::induced(integer_line(4));
  const auto r = corner_margin(m, exhaustive());
  CHECK(r.margin == ER(Rational(3, 4)));
  // crt(0,1,2,4) = (2:6:4) already gives 2/3
  const auto r5 = corner_margin(MoebiusStructure<Rational>::induced(integer_line(6)), exhaustive());
  CHECK(r5.margin <= r.margin);
  CHECK(r5.margin >= ER(Rational(1, 4)));
}

TEST_CASE("corner margin is at least 1/K^2") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto a = random_metric(6, seed);
    const auto Ka = quasi_constant(a).value();
    CHECK(corner_margin(MoebiusStructure<Rational>::induced(a), exhaustive()).margin >= ER(Rational(1) / (Ka * Ka)));
    for (int K : {2, 4, 8}) {
      const auto b = random_quasimetric(6, Rational(K), seed);
      const auto Kb = quasi_constant(b).value();
      const auto margin = corner_margin(MoebiusStructure<Rational>::induced(b), exhaustive()).margin;
      CHECK(margin >= ER(Rational(1) / (Kb * Kb)));
      CHECK(margin >= ER(Rational(1, K * K)));
    }
  }
}

TEST_CASE("infinity corner equals the quasi constant of the finite part") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto sp = random_quasimetric(6, Rational(2 << (seed % 3)), seed).with_infinity_point();
    CHECK(infinity_corner_K(sp) == quasi_constant(sp));
    const auto inv = involute(random_metric(6, seed), seed % 6);
    CHECK(infinity_corner_K(inv) == quasi_constant(inv));
  }
  CHECK_THROWS_AS(infinity_corner_report(integer_line(4)), std::invalid_argument);
  const auto small = integer_line(2).with_infinity_point();
  CHECK(infinity_corner_report(small).note == "fewer than three finite points");
}

TEST_CASE("boundedify keeps M and bounds distances by K") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto sp = seed % 2 ? random_metric(6, seed).with_infinity_point()
                             : random_quasimetric(6, Rational(4), seed).with_infinity_point();
    const std::size_t w = *sp.infinity();
    const auto K = quasi_constant(sp);
    const auto b = boundedify(sp, 0);
    CHECK_FALSE(b.infinity().has_value());
    CHECK(validate(b).empty());
    for (std::size_t x = 0; x < b.size(); ++x)
      for (std::size_t y = 0; y < b.size(); ++y) {
        CHECK(b.dist(x, y) <= K);
        if (x != w && y != w) CHECK(b.dist(x, y) < K);
      }
    // d(w, y) = 1 / (d(y, zeta0) + 1)
    for (std::size_t y = 0; y < b.size(); ++y)
      if (y != w) CHECK(b.dist(w, y) == ER(Rational(1) / (sp.dist(y, 0).value() + Rational(1))));
    for (const auto& q : admissible_quadruples(sp.size())) CHECK(ratio_of(b, q) == ratio_of(sp, q));
  }
}

TEST_CASE("boundedify of metrics stays within 2K") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto sp = random_metric(4 + seed % 4, seed).with_infinity_point();
    const auto K = quasi_constant(sp);
    CHECK(quasi_constant(boundedify(sp, seed % 4)) <= ER(Rational(2) * K.value()));
  }
}

TEST_CASE("a 4-quasi-metric whose boundedification exceeds 2K") {
  // Four points from random_quasimetric(6, 4, seed 4), zeta0 = a, so that
  // d~(x, y) = d(x, y) / (s_x s_y) with s = d(., a) + 1 = (1, 129, 1025, 33).
  // The triple (c, b, e) gives 1024 * 129 / max(288 * 33, 72/5 * 1025) = 5504/615.
  DistanceMatrix<Rational> d(4, 4);
  d << 0, 128, 1024, 32,  //
      128, 0, 288, Rational(72, 5),  //
      1024, 288, 0, 1024,  //
      32, Rational(72, 5), 1024, 0;
  const auto sp = FiniteSpace<Rational>({"a", "b", "c", "e"}, d).with_infinity_point();
  CHECK(quasi_constant(sp) == ER(Rational(4)));
  const auto b = boundedify(sp, 0);
  CHECK(quasi_constant(b) == ER(Rational(5504, 615)));
  CHECK(quasi_constant(b) > ER(Rational(8)));
  for (const auto& q : admissible_quadruples(sp.size())) CHECK(ratio_of(b, q) == ratio_of(sp, q));
}

TEST_CASE("boundedify rejects bad input") {
  CHECK_THROWS_AS(boundedify(integer_line(4), 0), std::invalid_argument);
  const auto sp = integer_line(4).with_infinity_point();
  CHECK_THROWS_AS(boundedify(sp, *sp.infinity()), std::invalid_argument);
}

TEST_CASE("symmetry margin is the smallest crt coordinate") {
  const auto m = MoebiusStructure<Rational>::induced(integer_line(4));
  const auto r = symmetry_margin(m, exhaustive());
  // crt(0,1,2,3) = (1/8, 1/2, 3/8); every non-degenerate quadruple of 0..3 is a permutation of it
  CHECK(r.margin == ER(Rational(1, 8)));
  CHECK(r.witnesses.size() == 1);
  const auto big = symmetry_margin(MoebiusStructure<Rational>::induced(integer_line(7)), exhaustive());
  CHECK(big.margin < r.margin);
  CHECK(big.margin > ER(Rational(0)));
}

TEST_CASE("condition reports serialize infinities as strings") {
  CHECK(ext_json(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(ext_json(-std::numeric_limits<double>::infinity()) == "-inf");
  const auto j = to_json(quasi_report(integer_line(5)));
  CHECK(j["kind"] == "quasi");
  CHECK(j["margin_exact"] == "1/2");
}

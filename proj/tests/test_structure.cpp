#include <doctest.h>

#include <random>

#include "moebius/fixtures.hpp"
#include "moebius/io.hpp"
#include "moebius/structure.hpp"
#include "test_util.hpp"

using namespace moebius;
using ER = ExtScalar<Rational>;

namespace {

// Closed form of d_A for a structure induced by d: the involution at omega,
// rescaled so that d_A(alpha, beta) = 1.
ER dA_oracle(const FiniteSpace<Rational>& sp, const BaseTriple& A, std::size_t x, std::size_t y) {
  if (x == y) return Rational(0);
  if (x == A.omega || y == A.omega) return ER::infinity();
  auto d = [&](std::size_t i, std::size_t j) { return sp.dist(i, j).value(); };
  return Rational(d(x, y) * d(A.alpha, A.omega) * d(A.beta, A.omega) / (d(x, A.omega) * d(A.omega, y) * d(A.alpha, A.beta)));
}

ScanOptions exhaustive() {
  ScanOptions o;
  o.exhaustive_limit = 16;
  return o;
}

nlohmann::json table_json(const std::vector<std::string>& points, const std::vector<std::pair<Quadruple, LogTriple>>& rows,
                          bool fill) {
  nlohmann::json entries = nlohmann::json::array();
  auto num = [](const ExtLog& v) -> nlohmann::json {
    if (v == ExtLog::pos_inf()) return "inf";
    if (v == ExtLog::neg_inf()) return "-inf";
    return v.value();
  };
  for (const auto& [q, m] : rows)
    entries.push_back({{"quad", {points[q[0]], points[q[1]], points[q[2]], points[q[3]]}},
                       {"M", {num(m[0]), num(m[1]), num(m[2])}}});
  return {{"points", points}, {"entries", entries}, {"fill_degenerate", fill}};
}

/// One entry per 4-subset, taken from the structure induced by sp.
std::vector<std::pair<Quadruple, LogTriple>> subset_rows(const FiniteSpace<Rational>& sp) {
  std::vector<std::pair<Quadruple, LogTriple>> rows;
  const std::size_t n = sp.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) rows.push_back({{a, b, c, d}, M_of(sp, {a, b, c, d})});
  return rows;
}

}  // namespace

TEST_CASE("crt on the integer line") {
  const auto sp = integer_line(4);
  // d(0,1)d(2,3) = 1, d(0,2)d(1,3) = 4, d(0,3)d(1,2) = 3
  const auto t = crt_of(sp, {0, 1, 2, 3});
  CHECK(t[0] == Rational(1, 8));
  CHECK(t[1] == Rational(1, 2));
  CHECK(t[2] == Rational(3, 8));
  const auto r = ratio_of(sp, {0, 1, 2, 3});
  CHECK(r[0] == ER(Rational(4, 3)));
  CHECK(r[1] == ER(Rational(3)));
  CHECK(r[2] == ER(Rational(1, 4)));
  CHECK_THROWS_AS(crt_of(sp, {1, 1, 1, 2}), InadmissibleQuadruple);
}

TEST_CASE("crt with the point at infinity in front is (d(y,z) : d(x,z) : d(x,y))") {
  const auto sp = extended_integer_line(5);
  const std::size_t w = *sp.infinity();
  for (std::size_t x = 0; x < 5; ++x)
    for (std::size_t y = 0; y < 5; ++y)
      for (std::size_t z = 0; z < 5; ++z) {
        if (x == y || y == z || x == z) continue;
        const Rational a = sp.dist(y, z).value(), b = sp.dist(x, z).value(), c = sp.dist(x, y).value();
        const Rational s = a + b + c;
        const auto t = crt_of(sp, {w, x, y, z});
        CHECK(t[0] == a / s);
        CHECK(t[1] == b / s);
        CHECK(t[2] == c / s);
      }
}

TEST_CASE("degenerate quadruples land on the boundary points") {
  const auto sp = random_metric(5, 2);
  CHECK(M_of(sp, {0, 0, 1, 2}) == LogTriple{{ExtLog(0.0), ExtLog::pos_inf(), ExtLog::neg_inf()}});
  CHECK(crt_of(sp, {0, 1, 0, 2}).zero_index() == 1);
  CHECK(crt_of(sp, {0, 1, 2, 0}).zero_index() == 2);
  CHECK(crt_of(sp, {3, 3, 4, 4}).zero_index() == 0);
}

TEST_CASE("ratio, classical and Gromov routes agree") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto sp = seed % 2 ? random_metric(6, seed) : random_metric(5, seed).with_infinity_point();
    for (const auto& q : admissible_quadruples(sp.size())) {
      const auto via_crt = ratio_of(sp, q);
      const auto classical = classical_cross_ratio(sp, q);
      CHECK(via_crt == classical);
      if (is_nondegenerate(q)) CHECK(near(gromov_expansion(sp, q), M_of(sp, q), Tolerance{1e-12}));
    }
  }
}

TEST_CASE("swapping the first two points swaps and negates") {
  // crt(x,w,y,z) exchanges the last two products, so M0 -> -M0, M1 -> -M2, M2 -> -M1.
  const auto sp = random_metric(6, 11);
  const auto m = M_of(sp, {0, 1, 2, 3}), s = M_of(sp, {1, 0, 2, 3});
  CHECK(near(s[0], -m[0]));
  CHECK(near(s[1], -m[2]));
  CHECK(near(s[2], -m[1]));
}

TEST_CASE("induced structures satisfy the axioms exactly") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto m = MoebiusStructure<Rational>::induced(random_metric(4 + seed % 3, seed));
    const auto r = check_axioms(m, exhaustive());
    CAPTURE(to_json(r).dump());
    CHECK(r.ok());
    CHECK(r.examined.at("1") > 0);
    CHECK(r.examined.at("4") > 0);
  }
  const auto m = MoebiusStructure<Rational>::induced(extended_integer_line(4));
  CHECK(check_axioms(m, exhaustive()).ok());
}

TEST_CASE("quasi-metrics and the circle also induce structures") {
  CHECK(check_axioms(MoebiusStructure<Rational>::induced(random_quasimetric(6, Rational(8), 3)), exhaustive()).ok());
  CHECK(check_axioms(MoebiusStructure<Rational>::induced(circle_space<Rational>(8)), exhaustive()).ok());
  CHECK(check_axioms(MoebiusStructure<Rational>::induced(doubled_zero_line(Rational(1), 4)), exhaustive()).ok());
}

TEST_CASE("sampled axiom scans are reproducible") {
  const auto m = MoebiusStructure<Rational>::induced(random_metric(14, 4));
  ScanOptions o;
  o.budget = 300;
  o.seed = 9;
  const auto a = check_axioms(m, o), b = check_axioms(m, o);
  CHECK(a.sampled);
  CHECK(a.ok());
  CHECK(to_json(a) == to_json(b));
  o.workers = 4;
  CHECK(to_json(check_axioms(m, o)) == to_json(a));
}

TEST_CASE("table structures reproduce the induced structure") {
  const auto sp = integer_line(5);
  const auto j = table_json(sp.labels(), subset_rows(sp), true);
  const auto t = table_from_json(j, Tolerance{1e-9});
  const auto r = check_axioms(t, exhaustive());
  CAPTURE(to_json(r).dump());
  CHECK(r.ok());
  const auto spd = sp.cast<double>();
  for (const auto& q : admissible_quadruples(5)) CHECK(near(t.evaluate(q), M_of(spd, q), Tolerance{1e-9}));
}

TEST_CASE("a sign-flipped table entry violates Property 1") {
  const auto sp = integer_line(5);
  auto rows = subset_rows(sp);
  rows.push_back({{1, 0, 2, 3}, M_of(sp, {0, 1, 2, 3})});  // should be -(M0, M2, M1)
  const auto r = check_axioms(table_from_json(table_json(sp.labels(), rows, true), Tolerance{1e-9}), exhaustive());
  CHECK_FALSE(r.ok());
  CHECK(r.violations.count("1"));
}

TEST_CASE("arbitrary valid values per orbit violate Property 4") {
  const auto sp = integer_line(5);
  auto rows = subset_rows(sp);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (auto& [q, m] : rows) {
    const double a = u(rng), b = u(rng);
    m = LogTriple{{ExtLog(a), ExtLog(b), ExtLog(-a - b)}};
  }
  const auto r = check_axioms(table_from_json(table_json(sp.labels(), rows, true), Tolerance{1e-9}), exhaustive());
  CHECK(r.violations.count("4"));
  CHECK_FALSE(r.violations.count("1"));
}

TEST_CASE("a finite value on a degenerate quadruple violates Properties 2 and 3") {
  const auto sp = integer_line(4);
  auto rows = subset_rows(sp);
  rows.push_back({{0, 0, 1, 2}, LogTriple{{ExtLog(0.0), ExtLog(0.0), ExtLog(0.0)}}});
  const auto r = check_axioms(table_from_json(table_json(sp.labels(), rows, true), Tolerance{1e-9}), exhaustive());
  CHECK(r.violations.count("2"));
  CHECK(r.violations.count("3"));
}

TEST_CASE("table documents are validated") {
  const std::vector<std::string> pts = {"a", "b", "c", "d"};
  CHECK_THROWS_AS(table_from_json(parse_json(R"({"points":["a"],"entries":[{"quad":["a","b","c","d"],"M":[0,0,0]}]})", "t")),
                  ParseError);
  CHECK_THROWS_AS(table_from_json(parse_json(R"({"points":["a","b","c","d"],"entries":[{"quad":["a","b","c","d"],"M":[1,1,1]}]})", "t")),
                  ParseError);
  CHECK_THROWS_AS(table_from_json(parse_json(R"({"points":["a","b","c","d"],"entries":[{"quad":["a","a","a","d"],"M":[0,"inf","-inf"]}]})", "t")),
                  ParseError);
  const auto t = table_from_json(parse_json(R"({"points":["a","b","c","d"],"entries":[{"quad":["a","b","c","d"],"M":[1,-1,0]}]})", "t"));
  CHECK_THROWS_AS(t.ratio({0, 0, 1, 2}), std::out_of_range);
}

TEST_CASE("d_A matches the involution closed form") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto sp = random_metric(6, seed);
    const auto m = MoebiusStructure<Rational>::induced(sp);
    for (const BaseTriple A : {BaseTriple{0, 1, 2}, BaseTriple{3, 5, 1}, BaseTriple{4, 0, 5}}) {
      const auto d = derive_dA(m, A);
      CHECK(d.space.infinity() == A.omega);
      CHECK(d(A.alpha, A.beta) == ER(Rational(1)));
      for (std::size_t x = 0; x < 6; ++x)
        for (std::size_t y = 0; y < 6; ++y) CHECK(d(x, y) == dA_oracle(sp, A, x, y));
    }
  }
}

TEST_CASE("d_A theorem on random metrics with the rescaling constant") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto sp = random_metric(6, seed);
    const auto m = MoebiusStructure<Rational>::induced(sp);
    const BaseTriple A{0, 1, 2};
    const std::size_t b = 3;
    const auto r = verify_dA_theorem(m, A, b, exhaustive());
    CAPTURE(to_json(r).dump());
    CHECK(r.ok());
    // lambda = d(beta,omega) d(alpha,b) / (d(alpha,beta) d(b,omega))
    auto d = [&](std::size_t i, std::size_t j) { return sp.dist(i, j).value(); };
    const Rational lambda = d(2, 0) * d(1, 3) / (d(1, 2) * d(3, 0));
    CHECK(r.values.at("lambda") == to_text(ER(lambda)));
  }
}

TEST_CASE("d_A theorem rejects a base point b inside A") {
  const auto m = MoebiusStructure<Rational>::induced(random_metric(5, 1));
  const auto r = verify_dA_theorem(m, {0, 1, 2}, 1, exhaustive());
  CHECK(r.violations.count("4"));
}

TEST_CASE("involution sends o to infinity and preserves M") {
  const auto sp = random_metric(6, 8);
  const auto inv = involute(sp, 2);
  CHECK(inv.infinity() == 2);
  CHECK(validate(inv).empty());
  for (const auto& q : admissible_quadruples(6)) CHECK(ratio_of(inv, q) == ratio_of(sp, q));
  // involuting twice at different points stays in the same class
  const auto twice = involute(inv, 4);
  for (const auto& q : admissible_quadruples(6)) CHECK(ratio_of(twice, q) == ratio_of(sp, q));
  CHECK_THROWS(involute(inv, 2));
}

TEST_CASE("Moebius equivalence") {
  const auto sp = integer_line(6);
  const auto m = MoebiusStructure<Rational>::induced(sp);
  const std::vector<std::size_t> id = {0, 1, 2, 3, 4, 5}, flip = {5, 4, 3, 2, 1, 0}, swap = {1, 0, 2, 3, 4, 5};
  CHECK(check_equivalence(m, m, id, exhaustive()).ok());
  CHECK(check_equivalence(m, m, flip, exhaustive()).ok());
  const auto bad = check_equivalence(m, m, swap, exhaustive());
  CHECK(bad.violations.count("moebius"));
  CHECK(bad.violations.count("derived-metric"));
  CHECK(check_equivalence(m, m, {0, 0, 1, 2, 3, 4}).violations.count("bijection"));
  // an involuted copy is equivalent through the identity
  const auto mi = MoebiusStructure<Rational>::induced(involute(sp, 3));
  CHECK(check_equivalence(m, mi, id, exhaustive()).ok());
}

TEST_CASE("doubled zero: d_A(0(j), y) = |alpha beta| / |alpha - beta| when omega is the other zero") {
  const Rational extent(3);
  const auto sp = doubled_zero_line(extent, 12);
  const auto m = MoebiusStructure<Rational>::induced(sp);
  const std::size_t n = sp.size();
  auto value = [&](std::size_t i) { return parse_rational(sp.label(i)); };
  for (std::size_t w : {0u, 1u}) {
    const std::size_t other = 1 - w;
    for (std::size_t a = 2; a < n; a += 3)
      for (std::size_t b = 3; b < n; b += 4) {
        if (a == b) continue;
        const auto d = derive_dA(m, {w, a, b});
        const Rational alpha = value(a), beta = value(b);
        const Rational CA = abs(alpha * beta) / abs(alpha - beta);
        for (std::size_t y = 2; y < n; ++y) CHECK(d(other, y) == ER(CA));
      }
  }
}

TEST_CASE("balls and separation") {
  const auto sp = integer_line(6);
  CHECK(ball(sp, 2, Rational(2)) == std::vector<std::size_t>{1, 2, 3});
  CHECK(separation_radius(sp, 0, 4) == ER(Rational(2)));
  // the two zeros share every ball that reaches the nearest grid point, 1/4 away
  const auto dz = doubled_zero_line(Rational(1), 8);
  CHECK(separation_radius(dz, 0, 1) == ER(Rational(1, 4)));
}

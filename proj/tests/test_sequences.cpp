#include <doctest.h>

#include <cmath>

#include "moebius/fixtures.hpp"
#include "moebius/sequences.hpp"
#include "sequence_battery.hpp"

using namespace moebius;
using moebius::testing::battery_ambient;
using moebius::testing::sequence_battery;

namespace {

SequenceHandle<Rational> rational_seq(std::string label, std::function<Rational(std::size_t)> f, std::size_t horizon = 10000,
                                      std::optional<Rational> limit = std::nullopt) {
  return {std::move(f), horizon, std::move(label), std::move(limit)};
}

SequenceHandle<double> circle_seq(std::size_t horizon) {
  return {[](std::size_t n) { return circle_point((n % 2 ? -1.0 : 1.0) / static_cast<double>(n)); }, horizon,
          "[(-1)^n/n]", std::nullopt};
}

}  // namespace

TEST_CASE("families") {
  CHECK(reciprocal_family<Rational>()(4) == Rational(1, 4));
  CHECK(reciprocal_family<Rational>(Rational(2), Rational(1))(4) == Rational(3, 2));
  CHECK(alternating_reciprocal_family<Rational>()(3) == Rational(-1, 3));
  CHECK(alternating_reciprocal_family<Rational>()(2) == Rational(1, 2));
  CHECK(linear_family<Rational>(Rational(-2), Rational(1))(3) == Rational(-5));
  CHECK(constant_family(Rational(7))(100) == Rational(7));
  const auto t = table_family(std::vector<int>{5, 6, 7});
  CHECK(t(1) == 5);
  CHECK(t(3) == 7);
  CHECK(t(1000) == 7);
  CHECK_THROWS(table_family(std::vector<int>{}));
}

TEST_CASE("tail indices are sorted, distinct and inside the window") {
  const auto idx = tail_indices(5000, 10000, 40);
  CHECK(idx.front() == 5000);
  CHECK(idx.back() == 10000);
  CHECK(std::is_sorted(idx.begin(), idx.end()));
  CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
  CHECK(tail_indices(3, 5, 40).size() == 3);
}

TEST_CASE("good pairs stay away from the tail") {
  const auto sp = unit_interval();
  const auto seq = rational_seq("1/n", reciprocal_family<Rational>());
  const std::vector<Rational> cand = {Rational(1, 2), Rational(1, 4), Rational(1, 10000)};
  const auto pairs = good_pairs(seq, sp, cand);
  // 1/10000 is the last term itself, so only (1/2, 1/4) survives
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].y == 0);
  CHECK(pairs[0].z == 1);
  CHECK(pairs[0].floor == doctest::Approx(0.25 - 1.0 / 5000));
}

TEST_CASE("condition 3 and condition 2 on the circle") {
  // [(-1)^n/n] approaches [0] from both sides; the two sides sit at 0+ and 4-.
  const auto sp = circle_ambient();
  const auto seq = circle_seq(10000);
  const auto a3 = condition3(seq, 2.5, 1.5, sp);
  const auto a2 = condition2(seq, 2.5, 1.5, sp);
  CHECK(a3.satisfied);
  CHECK_FALSE(a2.satisfied);
  const auto b3 = condition3(seq, 1.0, 3.0, sp);
  const auto b2 = condition2(seq, 1.0, 3.0, sp);
  CHECK(b3.satisfied);
  CHECK(b2.satisfied);
}

TEST_CASE("condition 3 fails on an oscillating sequence") {
  const auto sp = unit_interval();
  const auto seq = rational_seq("1/4,3/4", [](std::size_t n) { return n % 2 ? Rational(1, 4) : Rational(3, 4); });
  const auto r = condition3(seq, Rational(1, 8), Rational(1, 2), sp);
  CHECK_FALSE(r.satisfied);
  CHECK(r.max_tail > 0.1);
}

TEST_CASE("the battery classifies as its closed form says") {
  for (const auto& c : sequence_battery(10000)) {
    const auto sp = battery_ambient(c.ambient);
    const auto v = classify(c.seq, sp, default_candidates(sp, std::vector<Rational>{}));
    CAPTURE(c.seq.label);
    CHECK(to_string(v.classification) == to_string(c.expected));
  }
}

TEST_CASE("no good pair is raised, not reported") {
  const auto sp = as_procedural(integer_line(4));
  const SequenceHandle<std::size_t> seq{[](std::size_t) { return std::size_t{1}; }, 100, "1", std::nullopt};
  CHECK_THROWS_AS(classify(seq, sp, std::vector<std::size_t>{1, 1}), NoGoodPair);
}

TEST_CASE("Cauchy equivalence") {
  const auto sp = unit_interval();
  const auto cand = default_candidates(sp, std::vector<Rational>{});
  const auto a = rational_seq("1/n", reciprocal_family<Rational>());
  const auto b = rational_seq("1/n+1/n^2", [](std::size_t n) {
    const Rational r(1, static_cast<long>(n));
    return Rational(r + r * r);
  });
  const auto c = rational_seq("1/2+1/n", reciprocal_family<Rational>(Rational(1), Rational(1, 2)));
  const auto d = rational_seq("1/n+1e-6", reciprocal_family<Rational>(Rational(1), Rational(1, 1000000)));
  CHECK(cauchy_equivalent(a, b, sp, cand).equivalent);
  CHECK(cauchy_equivalent(a, a, sp, cand).max_tail == 0.0);
  CHECK_FALSE(cauchy_equivalent(a, c, sp, cand).equivalent);
  CHECK_FALSE(cauchy_equivalent(a, d, sp, cand).equivalent);

  // n and -n meet at the single point at infinity
  const auto line = rational_line();
  const auto lc = default_candidates(line, std::vector<Rational>{});
  CHECK(cauchy_equivalent(rational_seq("n", linear_family<Rational>()), rational_seq("-n", linear_family<Rational>(Rational(-1))),
                          line, lc)
            .equivalent);
}

TEST_CASE("sequences without a common good pair are rejected") {
  const auto sp = as_procedural(integer_line(5));
  const SequenceHandle<std::size_t> s1{[](std::size_t) { return std::size_t{0}; }, 100, "0", std::nullopt};
  const SequenceHandle<std::size_t> s2{[](std::size_t) { return std::size_t{1}; }, 100, "1", std::nullopt};
  // pairs good for s1 avoid 0, pairs good for s2 avoid 1; with candidates {0, 1, 2} none is shared
  CHECK_THROWS_AS(cauchy_equivalent(s1, s2, sp, std::vector<std::size_t>{0, 1, 2}), NoCommonGoodPair);
}

TEST_CASE("adjoining 1/n to the punctured interval") {
  const auto sp = unit_interval();
  std::vector<Rational> base;
  for (long k = 1; k <= 20; ++k) base.push_back(Rational(k, 20));
  const std::vector<SequenceHandle<Rational>> seqs = {
      rational_seq("1/n", reciprocal_family<Rational>(), 10000, Rational(0)),
      rational_seq("(-1)^n/(2n)+1/n", [](std::size_t n) {
        const Rational r(1, static_cast<long>(n));
        return n % 2 ? Rational(r - r / 2) : Rational(r + r / 2);
      }),
      rational_seq("1/2+1/n", reciprocal_family<Rational>(Rational(1), Rational(1, 2)), 10000, Rational(1, 2)),
  };
  const auto res = adjoin_limits(sp, base, seqs, default_candidates(sp, base));
  CAPTURE(to_json(res.report).dump());
  CHECK(res.report.ok());
  CHECK(res.adjoined == std::vector<std::string>{"1/n"});
  CHECK(res.report.values.at("duplicate:(-1)^n/(2n)+1/n") == "1/n");
  CHECK(res.report.values.at("converges:1/2+1/n") == "1/2");
  const auto& x = res.space;
  CHECK(x.size() == 21);
  CHECK(x.dist(20, 0) == ExtScalar<Rational>(Rational(1, 20)));
  ScanOptions o;
  o.budget = 4000;
  CHECK(check_axioms(MoebiusStructure<Rational>::induced(x), o).ok());
}

TEST_CASE("adjoining an eventually constant sequence adds nothing") {
  const auto fs = random_metric(6, 5);
  const auto sp = as_procedural(fs);
  const std::vector<std::size_t> base = {0, 1, 2, 3, 4, 5};
  const std::vector<SequenceHandle<std::size_t>> seqs = {
      {table_family(std::vector<std::size_t>{4, 1, 0, 3}), 200, "4,1,0,3,3,...", std::nullopt}};
  const auto res = adjoin_limits(sp, base, seqs, default_candidates(sp, base));
  CHECK(res.report.ok());
  CHECK(res.adjoined.empty());
  CHECK(res.report.values.at("converges:4,1,0,3,3,...") == "p3");
  const auto m = MoebiusStructure<Rational>::induced(fs), m2 = MoebiusStructure<Rational>::induced(res.space);
  CHECK(check_equivalence(m, m2, base).ok());
}

TEST_CASE("a sequence tending to infinity becomes the point at infinity") {
  const auto sp = rational_line();
  const std::vector<Rational> base = {Rational(0), Rational(1), Rational(3)};
  const std::vector<SequenceHandle<Rational>> seqs = {rational_seq("n", linear_family<Rational>())};
  const auto res = adjoin_limits(sp, base, seqs, default_candidates(sp, base));
  CHECK(res.report.ok());
  REQUIRE(res.space.infinity().has_value());
  CHECK(*res.space.infinity() == 3);
  CHECK(validate(res.space).empty());
}

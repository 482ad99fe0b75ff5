#pragma once

#include <string>
#include <vector>

#include "moebius/fixtures.hpp"
#include "moebius/sequences.hpp"

namespace moebius::testing {

// Closed-form sequences on the unit interval and the rational line, each with
// its classical verdict: Cauchy (bounded), tending to infinity, or neither.
struct BatteryCase {
  std::string ambient;  // "interval" or "line"
  SequenceHandle<Rational> seq;
  Classification expected;
};

inline std::vector<BatteryCase> sequence_battery(std::size_t horizon = 10000) {
  auto make = [horizon](std::string label, std::function<Rational(std::size_t)> f) {
    return SequenceHandle<Rational>{std::move(f), horizon, std::move(label), std::nullopt};
  };
  auto L = [](std::size_t n) { return static_cast<long>(n); };
  using C = Classification;
  return {
      {"interval", make("1/n", reciprocal_family<Rational>()), C::bounded_cauchy},
      {"interval", make("1/2+(-1)^n/(4n)", alternating_reciprocal_family<Rational>(Rational(1, 4), Rational(1, 2))),
       C::bounded_cauchy},
      {"interval", make("1-1/(n+1)", [L](std::size_t n) { return Rational(L(n), L(n) + 1); }), C::bounded_cauchy},
      {"interval", make("1/3", constant_family(Rational(1, 3))), C::bounded_cauchy},
      {"interval", make("1/4,3/4,...", [](std::size_t n) { return n % 2 ? Rational(1, 4) : Rational(3, 4); }), C::not_cauchy},
      {"interval", make("(n mod 7)/8+1/16", [L](std::size_t n) { return Rational(L(n % 7), 8) + Rational(1, 16); }),
       C::not_cauchy},
      {"line", make("3+1/n", reciprocal_family<Rational>(Rational(1), Rational(3))), C::bounded_cauchy},
      {"line", make("n", linear_family<Rational>()), C::divergent},
      {"line", make("-2n", linear_family<Rational>(Rational(-2))), C::divergent},
      {"line", make("(-1)^n n", [L](std::size_t n) { return Rational(n % 2 ? -L(n) : L(n)); }), C::divergent},
      {"line", make("n^2/7", [L](std::size_t n) { return Rational(L(n) * L(n), 7); }), C::divergent},
      {"line", make("n mod 5", [L](std::size_t n) { return Rational(L(n % 5)); }), C::not_cauchy},
  };
}

inline ProceduralSpace<Rational, Rational> battery_ambient(const std::string& name) {
  return name == "line" ? rational_line() : unit_interval();
}

}  // namespace moebius::testing

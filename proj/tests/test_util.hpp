#pragma once

#include <random>
#include <string>
#include <vector>

#include "moebius/space.hpp"

namespace moebius::testing {

inline std::string test_data(const std::string& name) { return std::string(MOEBIUS_TEST_DATA) + "/" + name; }

/// A fresh scratch path under the build tree.
inline std::string scratch(const std::string& name) { return std::string(MOEBIUS_TEST_SCRATCH) + "/" + name; }

/// Points of the real line as an exact space.
inline FiniteSpace<Rational> line_points(const std::vector<Rational>& xs) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  DistanceMatrix<Rational> d(n, n);
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < n; ++i) {
    labels.push_back(to_text_scalar(xs[static_cast<std::size_t>(i)]));
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = abs(xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)]);
  }
  return FiniteSpace<Rational>(std::move(labels), std::move(d));
}

}  // namespace moebius::testing

using moebius::testing::scratch;
using moebius::testing::test_data;

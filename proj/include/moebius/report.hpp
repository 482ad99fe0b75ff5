#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace moebius {

inline constexpr int kReportSchemaVersion = 1;

struct Witness {
  std::string property;
  std::vector<std::string> tuple;
  std::string detail;
};

/// Outcome of a verification scan. Violations are data: a failing check is a
/// report with witnesses, not an exception.
struct Report {
  std::string check;
  std::vector<Witness> witnesses;
  std::map<std::string, std::size_t> violations;  // property -> count
  std::map<std::string, std::size_t> examined;    // property -> cases examined
  std::map<std::string, std::string> values;      // named scalar outputs
  bool sampled = false;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::size_t max_witnesses = 16;

  bool ok() const { return violations.empty(); }
  std::string status() const { return ok() ? "pass" : "fail"; }

  void count(const std::string& property, std::size_t n = 1) { examined[property] += n; }

  void fail(const std::string& property, std::vector<std::string> tuple, std::string detail) {
    const std::size_t seen = violations[property]++;
    if (seen < max_witnesses) witnesses.push_back({property, std::move(tuple), std::move(detail)});
  }

  /// Appends another partial report; used to merge partitioned scans in order.
  void merge(const Report& other);

  std::size_t violation_count() const {
    std::size_t total = 0;
    for (const auto& [k, v] : violations) total += v;
    return total;
  }
};

nlohmann::json to_json(const Report& r);

}  // namespace moebius

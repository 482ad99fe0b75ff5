#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace moebius {

/// Everything a single command needs; embedded verbatim in every report.
struct RunConfig {
  std::string command;
  std::vector<std::string> args;    // positional arguments after the command
  std::vector<std::string> inputs;  // --input, repeatable
  std::string mode = "exact";       // exact | float
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::size_t budget = 200000;
  std::size_t horizon = 10000;
  double delta = 1e-6;
  double tau = 1e-3;
  double min_decay = 0.25;
  std::string out;
  unsigned workers = 1;

  bool table = false;               // --input is a table-backed structure
  std::vector<std::string> quad;    // crt
  std::vector<std::string> base;    // derive-da, verify-da: omega alpha beta [b]
  std::string point;                // involute, boundedify
  std::vector<std::string> map;     // equivalent: image label of each point of the first input
  std::vector<std::string> sequences;
  std::vector<std::string> anchors;
  std::string ambient = "input";    // line | interval | circle | input
  std::optional<double> bound;      // quasi-k: fail above; corner/symmetry: fail below
  std::size_t grid = 720;
  std::size_t size = 6;
  std::string K = "2";
  std::string extent = "2";
  std::string format = "json";      // fixture: json | csv
};

nlohmann::json config_json(const RunConfig& c);

/// Runs one command. Returns 0 on a clean pass, 1 when violations were found
/// and 2 when the input could not be checked. The report goes to c.out, or to
/// `out` when no path is given; diagnostics go to `err`.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

}  // namespace moebius

#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "moebius/cli.hpp"
#include "moebius/fixtures.hpp"
#include "moebius/io.hpp"
#include "test_util.hpp"

using namespace moebius;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result invoke(const RunConfig& c) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  return {code, out.str(), err.str()};
}

std::string put(const std::string& name, const std::string& text) {
  std::filesystem::create_directories(scratch(""));
  const auto path = scratch(name);
  write_file_atomic(path, text);
  return path;
}

RunConfig config(std::string command, std::vector<std::string> inputs = {}) {
  RunConfig c;
  c.command = std::move(command);
  c.inputs = std::move(inputs);
  return c;
}

}  // namespace

TEST_CASE("fixture emits a loadable space") {
  auto c = config("fixture");
  c.args = {"integer-line"};
  c.size = 5;
  const auto r = invoke(c);
  REQUIRE(r.code == 0);
  const auto sp = space_from_json<Rational>(r.json());
  CHECK(sp.size() == 5);
  CHECK(sp.dist(0, 3) == ExtScalar<Rational>(Rational(3)));
  c.format = "csv";
  const auto csv = invoke(c);
  CHECK(csv.code == 0);
  CHECK(space_from_csv<Rational>(csv.out).size() == 5);
}

TEST_CASE("reports embed the schema version and the resolved config") {
  const auto path = put("rm6.json", space_to_json(random_metric(6, 1)).dump());
  auto c = config("axioms", {path});
  c.seed = 42;
  const auto r = invoke(c);
  CHECK(r.code == 0);
  const auto j = r.json();
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["config"]["seed"] == 42);
  CHECK(j["config"]["command"] == "axioms");
  CHECK(j["violations"].empty());
}

TEST_CASE("validate distinguishes violations from input errors") {
  CHECK(invoke(config("validate", {put("ok.json", space_to_json(integer_line(4)).dump())})).code == 0);
  const auto asym = put("asym.json", R"({"points":["a","b","c"],"matrix":[[0,1,2],[1,0,1],[3,1,0]]})");
  CHECK(invoke(config("validate", {asym})).code == 1);
  const auto broken = put("broken.json", "{\"points\": [\"a\",\n");
  const auto r = invoke(config("validate", {broken}));
  CHECK(r.code == 2);
  CHECK(r.err.find("line") != std::string::npos);
  CHECK(r.json()["status"] == "error");
  CHECK(invoke(config("validate", {scratch("missing.json")})).code == 2);
  CHECK(invoke(config("frobnicate", {})).code == 2);
  auto bad_tol = config("validate", {asym});
  bad_tol.tol = 0;
  CHECK(invoke(bad_tol).code == 2);
}

TEST_CASE("crt of a degenerate quadruple is the boundary point (0:1:1)") {
  auto c = config("crt", {put("line4.json", space_to_json(integer_line(4)).dump())});
  c.quad = {"1", "1", "2", "3"};
  const auto r = invoke(c);
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["crt"] == nlohmann::json::parse(R"([0, "1/2", "1/2"])"));
  c.quad = {"1", "1", "1", "3"};
  CHECK(invoke(c).code == 2);
}

TEST_CASE("quasi-k with a bound on the circle") {
  auto f = config("fixture");
  f.args = {"circle"};
  f.grid = 72;
  const auto path = put("circle72.json", invoke(f).out);
  auto c = config("quasi-k", {path});
  c.bound = 12;
  const auto r = invoke(c);
  CHECK(r.code == 0);
  c.bound = 2;
  CHECK(invoke(c).code == 1);
}

TEST_CASE("output is byte-stable and written atomically") {
  const auto path = put("rm9.json", space_to_json(random_metric(9, 3)).dump());
  auto c = config("symmetry", {path});
  c.budget = 500;
  c.seed = 7;
  const auto a = invoke(c), b = invoke(c);
  CHECK(a.out == b.out);
  c.out = scratch("symmetry.json");
  const auto w = invoke(c);
  CHECK(w.code == 0);
  CHECK(w.out.empty());
  // the written report differs from stdout only in the recorded output path
  auto written = nlohmann::json::parse(read_file(c.out)), printed = a.json();
  CHECK(written["config"]["out"] == c.out);
  written["config"].erase("out");
  printed["config"].erase("out");
  CHECK(written == printed);
  CHECK_FALSE(std::filesystem::exists(c.out + ".tmp"));
}

TEST_CASE("boundedify reports the bound and the 2K check") {
  auto c = config("boundedify", {put("ext.json", space_to_json(random_metric(5, 2).with_infinity_point()).dump())});
  c.point = "p0";
  const auto r = invoke(c);
  CHECK(r.code == 0);
  const auto j = r.json();
  CHECK(j["violations"].empty());
  CHECK(space_from_json<Rational>(j["space"]).size() == 6);
  c.point = "inf";
  CHECK(invoke(c).code == 2);
}

TEST_CASE("sequence commands") {
  auto c = config("cauchy");
  c.ambient = "interval";
  c.sequences = {"reciprocal", "linear:1/2:0"};
  c.horizon = 2000;
  const auto r = invoke(c);
  REQUIRE(r.code == 0);
  const auto v = r.json()["verdicts"];
  CHECK(v[0]["classification"] == "bounded-cauchy");
  auto e = config("equivalent");
  e.ambient = "line";
  e.sequences = {"linear", "linear:-1"};
  e.horizon = 2000;
  CHECK(invoke(e).code == 0);
  e.sequences = {"linear"};
  CHECK(invoke(e).code == 2);
}

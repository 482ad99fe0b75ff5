#include <iostream>

#include <CLI11.hpp>

#include "moebius/cli.hpp"

int main(int argc, char** argv) {
  moebius::RunConfig c;
  CLI::App app{"Moebius structures on finite and procedural spaces"};
  app.add_option("command", c.command,
                 "validate | crt | axioms | derive-da | verify-da | involute | quasi-k | corner | symmetry | "
                 "boundedify | cauchy | equivalent | adjoin | fixture")
      ->required();
  app.add_option("args", c.args, "positional arguments (fixture name)");
  app.add_option("--input,-i", c.inputs, "space or table document (repeatable)");
  app.add_option("--mode", c.mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", c.tol, "relative tolerance in float mode");
  app.add_option("--seed", c.seed, "seed for sampling and generators");
  app.add_option("--budget", c.budget, "samples per property in sampled scans");
  app.add_option("--horizon", c.horizon, "last sequence index inspected");
  app.add_option("--delta", c.delta, "good-pair floor");
  app.add_option("--tau", c.tau, "Cauchy diagnostic threshold");
  app.add_option("--min-decay", c.min_decay, "smallest accepted log-log decay rate of a vanishing tail");
  app.add_option("--out,-o", c.out, "report path (stdout when omitted)");
  app.add_option("--workers", c.workers, "scan threads");
  app.add_flag("--table", c.table, "the input is a table-backed structure");
  app.add_option("--quad", c.quad, "four point labels")->expected(4);
  app.add_option("--base", c.base, "omega alpha beta [b]")->expected(3, 4);
  app.add_option("--point", c.point, "involution point or zeta0");
  app.add_option("--map", c.map, "image labels of the points of the first input");
  app.add_option("--sequence", c.sequences, "family[:a[:b]] (repeatable)");
  app.add_option("--anchor", c.anchors, "extra good-pair candidates (repeatable)");
  app.add_option("--ambient", c.ambient, "line | interval | circle | input");
  app.add_option("--bound", c.bound, "quasi-k: largest accepted K; corner/symmetry: smallest accepted margin");
  app.add_option("--grid", c.grid, "fixture grid resolution");
  app.add_option("--size", c.size, "fixture size");
  app.add_option("--K", c.K, "random-quasimetric constant");
  app.add_option("--extent", c.extent, "doubled-zero extent");
  app.add_option("--format", c.format, "fixture output: json | csv");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return moebius::run(c, std::cout, std::cerr);
}

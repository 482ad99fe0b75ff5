#include "moebius/cli.hpp"

#include <iostream>
#include <map>
#include <sstream>

#include "moebius/conditions.hpp"
#include "moebius/fixtures.hpp"
#include "moebius/io.hpp"
#include "moebius/sequences.hpp"
#include "moebius/structure.hpp"

namespace moebius {

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j = {{"command", c.command},   {"args", c.args},       {"inputs", c.inputs},
                      {"mode", c.mode},         {"tol", c.tol},         {"seed", c.seed},
                      {"budget", c.budget},     {"horizon", c.horizon}, {"delta", c.delta},
                      {"tau", c.tau},           {"min_decay", c.min_decay},{"out", c.out},         {"workers", c.workers},
                      {"table", c.table},       {"quad", c.quad},       {"base", c.base},
                      {"point", c.point},       {"map", c.map},         {"sequences", c.sequences},
                      {"anchors", c.anchors},   {"ambient", c.ambient}, {"grid", c.grid},
                      {"size", c.size},         {"K", c.K},             {"extent", c.extent},
                      {"format", c.format}};
  j["bound"] = c.bound ? nlohmann::json(*c.bound) : nlohmann::json(nullptr);
  return j;
}

namespace {

/// Bad arguments or input documents; reported with exit status 2.
class InputError : public Error {
public:
  using Error::Error;
};

struct Outcome {
  Outcome() = default;
  Outcome(nlohmann::json b, int c, std::string t = {}) : body(std::move(b)), code(c), text(std::move(t)) {}

  nlohmann::json body;
  int code = 0;
  std::string text;  // non-JSON payload (CSV fixtures)
};

nlohmann::json log_json(const ExtLog& v) {
  switch (v.kind()) {
    case ExtLog::Kind::pos_inf: return "inf";
    case ExtLog::Kind::neg_inf: return "-inf";
    default: return v.value();
  }
}

template <class Scalar>
nlohmann::json triple_json(const ProjTriple<Scalar>& t) {
  return {ext_to_json(ExtScalar<Scalar>(t[0])), ext_to_json(ExtScalar<Scalar>(t[1])), ext_to_json(ExtScalar<Scalar>(t[2]))};
}

template <class Scalar>
nlohmann::json triple_json(const RatioTriple<Scalar>& t) {
  return {ext_to_json(t[0]), ext_to_json(t[1]), ext_to_json(t[2])};
}

nlohmann::json triple_json(const LogTriple& t) { return {log_json(t[0]), log_json(t[1]), log_json(t[2])}; }

nlohmann::json report_json(const Report& r) {
  auto j = to_json(r);
  return j;
}

std::size_t label_index(const std::vector<std::string>& labels, const std::string& label) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw InputError("unknown point '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

ScanOptions scan_options(const RunConfig& c) {
  ScanOptions o;
  o.budget = c.budget;
  o.seed = c.seed;
  o.workers = std::max(1u, c.workers);
  o.tol = Tolerance{c.tol};
  return o;
}

SequenceOptions sequence_options(const RunConfig& c) {
  SequenceOptions o;
  o.delta = c.delta;
  o.tau = c.tau;
  o.min_decay = c.min_decay;
  o.seed = c.seed;
  o.tol = Tolerance{c.tol};
  return o;
}

const std::string& input_path(const RunConfig& c, std::size_t k = 0) {
  if (c.inputs.size() <= k) throw InputError("missing --input");
  return c.inputs[k];
}

BaseTriple base_triple(const RunConfig& c, const std::vector<std::string>& labels, std::size_t need) {
  if (c.base.size() != need)
    throw InputError("--base expects " + std::to_string(need) + " point labels");
  return {label_index(labels, c.base[0]), label_index(labels, c.base[1]), label_index(labels, c.base[2])};
}

int status_code(const Report& r) { return r.ok() ? 0 : 1; }

template <class Scalar>
Outcome structure_command(const RunConfig& c, const MoebiusStructure<Scalar>& m, const FiniteSpace<Scalar>* sp) {
  const auto& labels = m.labels();
  const ScanOptions opt = scan_options(c);
  if (c.command == "axioms") {
    const auto r = check_axioms(m, opt);
    return {report_json(r), status_code(r)};
  }
  if (c.command == "crt") {
    if (c.quad.size() != 4) throw InputError("--quad expects four point labels");
    Quadruple q;
    for (std::size_t k = 0; k < 4; ++k) q[k] = label_index(labels, c.quad[k]);
    if (!is_admissible(q)) throw InputError("inadmissible quadruple: a point occurs three or more times");
    const auto ratio = m.ratio(q);
    nlohmann::json j = {{"check", "crt"},
                        {"status", "pass"},
                        {"quad", c.quad},
                        {"crt", triple_json(m.crt(q))},
                        {"ratio", triple_json(ratio)},
                        {"M", triple_json(psi(ratio))},
                        {"nondegenerate", is_nondegenerate(q)}};
    if (sp && is_nondegenerate(q)) j["gromov"] = triple_json(gromov_expansion(*sp, q));
    return {j, 0};
  }
  if (c.command == "derive-da") {
    const auto A = base_triple(c, labels, 3);
    if (!A.is_nondegenerate()) throw InputError("--base points must be distinct");
    try {
      const auto d = derive_dA(m, A);
      return {{{"check", "derive-da"}, {"status", "pass"}, {"base", c.base}, {"space", space_to_json(d.space)}}, 0};
    } catch (const Error& e) {
      Report r;
      r.check = "derive-da";
      r.fail("branch", c.base, e.what());
      return {report_json(r), 1};
    }
  }
  if (c.command == "verify-da") {
    if (c.base.size() != 4) throw InputError("--base expects omega alpha beta b");
    const auto A = base_triple(c, labels, 4);
    if (!A.is_nondegenerate()) throw InputError("--base points must be distinct");
    const auto r = verify_dA_theorem(m, A, label_index(labels, c.base[3]), opt);
    return {report_json(r), status_code(r)};
  }
  if (c.command == "corner" || c.command == "symmetry") {
    const auto r = c.command == "corner" ? corner_margin(m, opt) : symmetry_margin(m, opt);
    auto j = to_json(r);
    j["check"] = c.command;
    const bool ok = r.margin.is_infinite() || (c.bound ? r.margin.to_double() >= *c.bound : !r.margin.is_zero());
    j["status"] = ok ? "pass" : "fail";
    return {j, ok ? 0 : 1};
  }
  throw InputError("command '" + c.command + "' is not available for this input");
}

template <class Scalar>
Outcome space_command(const RunConfig& c) {
  const auto sp = load_space<Scalar>(input_path(c));
  const auto violations = validate(sp);
  if (c.command == "validate") {
    Report r;
    r.check = "validate";
    r.count("presentation", sp.size() * sp.size());
    for (const auto& v : violations) r.fail(v.kind, {sp.label(v.i), sp.label(v.j)}, v.message);
    return {report_json(r), status_code(r)};
  }
  if (!violations.empty())
    throw InputError("input is not a valid presentation: " + violations.front().message + " (run validate)");
  const auto& labels = sp.labels();
  if (c.command == "involute") {
    const auto o = label_index(labels, c.point);
    if (sp.is_infinity(o)) throw InputError("--point is the point at infinity");
    return {{{"check", "involute"}, {"status", "pass"}, {"point", c.point}, {"space", space_to_json(involute(sp, o))}}, 0};
  }
  if (c.command == "quasi-k") {
    const auto r = quasi_report(sp);
    auto j = to_json(r);
    j["check"] = "quasi-k";
    const double K = r.K_estimate.value_or(1.0);
    const bool ok = std::isfinite(K) && (!c.bound || K <= *c.bound * (1 + c.tol));
    j["status"] = ok ? "pass" : "fail";
    if (sp.infinity()) {
      const auto ic = infinity_corner_report(sp);
      j["infinity_corner"] = to_json(ic);
    }
    return {j, ok ? 0 : 1};
  }
  if (c.command == "boundedify") {
    const auto z0 = label_index(labels, c.point);
    if (!sp.infinity()) throw InputError("boundedify needs a space with a point at infinity");
    if (sp.is_infinity(z0)) throw InputError("--point is the point at infinity");
    const auto K = quasi_constant(sp);
    const auto b = boundedify(sp, z0);
    Report r;
    r.check = "boundedify";
    const auto Kb = quasi_constant(b);
    r.values["K_input"] = to_text(K);
    r.values["K_output"] = to_text(Kb);
    // Pairs of finite points stay strictly below K; distances to the old point
    // at infinity are 1 / (d(y, zeta0) + 1) and may reach K = 1.
    const std::size_t w = *sp.infinity();
    ExtScalar<Scalar> sup(Scalar(0)), sup_finite(Scalar(0));
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t k = 0; k < b.size(); ++k) {
        sup = std::max(sup, b.dist(i, k));
        if (i != w && k != w) sup_finite = std::max(sup_finite, b.dist(i, k));
      }
    r.values["sup"] = to_text(sup);
    r.values["sup_finite"] = to_text(sup_finite);
    r.count("bounded");
    if (K < sup) r.fail("bounded", {}, "sup of the bounded distance is " + to_text(sup) + ", K = " + to_text(K));
    if (!(sup_finite < K))
      r.fail("bounded", {}, "sup over finite pairs is " + to_text(sup_finite) + ", K = " + to_text(K));
    r.count("2K");
    if (K.is_finite() && Kb > ExtScalar<Scalar>(Scalar(2 * K.value())))
      r.fail("2K", {}, "output quasi-constant " + to_text(Kb) + " exceeds 2K");
    const auto m1 = MoebiusStructure<Scalar>::induced(sp, Tolerance{c.tol});
    const auto m2 = MoebiusStructure<Scalar>::induced(b, Tolerance{c.tol});
    const auto quads = scan_tuples<4>(sp.size(), scan_options(c), 8, [](const Quadruple&) { return true; });
    for (const auto& q : quads) {
      r.count("moebius");
      if (!near(m1.ratio(q), m2.ratio(q), Tolerance{c.tol}))
        r.fail("moebius", tuple_labels(labels, q), "cross ratio changed");
    }
    auto j = report_json(r);
    j["space"] = space_to_json(b);
    return {j, status_code(r)};
  }
  if (c.command == "equivalent") {
    const auto sp2 = load_space<Scalar>(input_path(c, 1));
    if (c.map.size() != sp.size()) throw InputError("--map expects one label of the second input per point");
    std::vector<std::size_t> f;
    for (const auto& l : c.map) f.push_back(label_index(sp2.labels(), l));
    const auto m1 = MoebiusStructure<Scalar>::induced(sp, Tolerance{c.tol});
    const auto m2 = MoebiusStructure<Scalar>::induced(sp2, Tolerance{c.tol});
    const auto r = check_equivalence(m1, m2, f, scan_options(c));
    return {report_json(r), status_code(r)};
  }
  const auto m = MoebiusStructure<Scalar>::induced(sp, Tolerance{c.tol});
  return structure_command(c, m, &sp);
}

Outcome table_command(const RunConfig& c) {
  const std::string& path = input_path(c);
  const auto m = table_from_json(parse_json(read_file(path), path), Tolerance{c.tol});
  return structure_command<double>(c, m, nullptr);
}

// Sequences are written "family[:a[:b]]": reciprocal (b + a/n), alternating-reciprocal
// (b + (-1)^n a/n), linear (a n + b), constant:c, and table:v1,v2,... (continued by
// the last value).
struct SequenceText {
  std::string family;
  std::vector<std::string> params;
};

SequenceText split_sequence(const std::string& s) {
  SequenceText out;
  std::stringstream ss(s);
  std::string part;
  std::getline(ss, out.family, ':');
  while (std::getline(ss, part, ':')) out.params.push_back(part);
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(part);
  return out;
}

Rational param(const SequenceText& s, std::size_t k, const Rational& fallback) {
  if (s.params.size() <= k) return fallback;
  try {
    return parse_rational(s.params[k]);
  } catch (const ParseError& e) {
    throw InputError("sequence " + s.family + ": " + e.what());
  }
}

/// A sequence of rational points with its closed-form limit where one exists.
SequenceHandle<Rational> rational_sequence(const std::string& text, std::size_t horizon) {
  const auto s = split_sequence(text);
  SequenceHandle<Rational> h;
  h.horizon = horizon;
  h.label = text;
  const bool affine = s.family == "reciprocal" || s.family == "alternating-reciprocal" || s.family == "linear";
  const Rational a = affine ? param(s, 0, Rational(1)) : Rational(0), b = affine ? param(s, 1, Rational(0)) : Rational(0);
  if (s.family == "reciprocal") {
    h.gen = reciprocal_family(a, b);
    h.limit = b;
  } else if (s.family == "alternating-reciprocal") {
    h.gen = alternating_reciprocal_family(a, b);
    h.limit = b;
  } else if (s.family == "linear") {
    h.gen = linear_family(a, b);
    if (a == 0) h.limit = b;
  } else if (s.family == "constant") {
    const Rational v = param(s, 0, Rational(0));
    h.gen = constant_family(v);
    h.limit = v;
  } else if (s.family == "table") {
    if (s.params.empty()) throw InputError("sequence table: no values");
    std::vector<Rational> values;
    for (const auto& v : split_commas(s.params[0])) values.push_back(parse_rational(v));
    h.limit = values.back();
    h.gen = table_family(std::move(values));
  } else {
    throw InputError("unknown sequence family '" + s.family + "'");
  }
  return h;
}

/// The same families read modulo 4 on the circle.
SequenceHandle<double> circle_sequence(const std::string& text, std::size_t horizon) {
  const auto r = rational_sequence(text, horizon);
  SequenceHandle<double> h;
  h.horizon = horizon;
  h.label = text;
  auto gen = r.gen;
  h.gen = [gen](std::size_t n) { return circle_point(gen(n).convert_to<double>()); };
  if (r.limit) {
    const double t = std::fmod(r.limit->convert_to<double>(), 4.0);
    if (t != 0.0) h.limit = circle_point(t);
  }
  return h;
}

/// Sequences of points of a finite input: constant:label or table:l1,l2,...
SequenceHandle<std::size_t> index_sequence(const std::string& text, std::size_t horizon,
                                           const std::vector<std::string>& labels) {
  const auto s = split_sequence(text);
  SequenceHandle<std::size_t> h;
  h.horizon = horizon;
  h.label = text;
  std::vector<std::size_t> values;
  if ((s.family != "constant" && s.family != "table") || s.params.empty())
    throw InputError("sequences on a finite input are constant:label or table:l1,l2,...");
  for (const auto& l : split_commas(s.params[0])) values.push_back(label_index(labels, l));
  h.limit = values.back();
  h.gen = table_family(std::move(values));
  return h;
}

nlohmann::json verdict_json(const CauchyVerdict& v, const std::vector<std::string>& candidate_labels) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : v.pairs)
    pairs.push_back({{"pair", {candidate_labels[p.pair.y], candidate_labels[p.pair.z]}},
                     {"floor", p.pair.floor},
                     {"condition3", {{"max_tail", p.c3.max_tail}, {"slope", ext_json(p.c3.slope)}, {"satisfied", p.c3.satisfied}}},
                     {"condition2",
                      {{"residual", p.c2.residual}, {"middle_ratio", ext_json(p.c2.middle_ratio)}, {"satisfied", p.c2.satisfied}}}});
  return {{"classification", to_string(v.classification)},
          {"condition3_margin", v.condition3_margin},
          {"condition3_slope", ext_json(v.condition3_slope)},
          {"condition2_residual", v.condition2_residual},
          {"tail_spread", v.tail_spread},
          {"reference_max", ext_json(v.reference_max)},
          {"reference_min", ext_json(v.reference_min)},
          {"good_pairs", pairs}};
}

template <class P, class Scalar, class MakeSeq>
Outcome sequence_command(const RunConfig& c, const ProceduralSpace<P, Scalar>& sp, const std::vector<P>& anchors,
                         const std::vector<P>& base, MakeSeq&& make) {
  const auto opt = sequence_options(c);
  auto candidates = default_candidates(sp, anchors, opt);
  std::vector<std::string> cl;
  for (const auto& p : candidates) cl.push_back(sp.label(p));
  std::vector<SequenceHandle<P>> seqs;
  for (const auto& s : c.sequences) seqs.push_back(make(s));
  if (seqs.empty()) throw InputError("missing --sequence");
  if (c.command == "cauchy") {
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& s : seqs) {
      auto v = verdict_json(classify(s, sp, candidates, opt), cl);
      v["sequence"] = s.label;
      verdicts.push_back(v);
    }
    return {{{"check", "cauchy"}, {"status", "pass"}, {"verdicts", verdicts}}, 0};
  }
  if (c.command == "equivalent") {
    if (seqs.size() != 2) throw InputError("equivalent expects two --sequence options");
    const auto r = cauchy_equivalent(seqs[0], seqs[1], sp, candidates, opt);
    return {{{"check", "equivalent"},
             {"status", r.equivalent ? "pass" : "fail"},
             {"equivalent", r.equivalent},
             {"common_pairs", r.common_pairs},
             {"max_tail", r.max_tail},
             {"worst_slope", ext_json(r.worst_slope)}},
            r.equivalent ? 0 : 1};
  }
  if (c.command == "adjoin") {
    const auto res = adjoin_limits(sp, base, seqs, candidates, opt);
    auto j = report_json(res.report);
    j["adjoined"] = res.adjoined;
    j["space"] = space_to_json(res.space);
    return {j, status_code(res.report)};
  }
  throw InputError("command '" + c.command + "' does not take sequences");
}

Outcome rational_sequence_command(const RunConfig& c, const ProceduralSpace<Rational, Rational>& sp) {
  std::vector<Rational> anchors, base;
  for (const auto& a : c.anchors) anchors.push_back(parse_rational(a));
  if (c.command == "adjoin") {
    const auto input = load_space<Rational>(input_path(c));
    for (const auto& l : input.labels()) base.push_back(parse_rational(l));
  }
  return sequence_command(c, sp, anchors, base, [&](const std::string& s) { return rational_sequence(s, c.horizon); });
}

Outcome circle_sequence_command(const RunConfig& c) {
  const auto sp = circle_ambient();
  std::vector<double> anchors, base;
  for (const auto& a : c.anchors) anchors.push_back(circle_point(parse_rational(a).convert_to<double>()));
  if (c.command == "adjoin") {
    const auto input = load_space<double>(input_path(c));
    for (const auto& l : input.labels()) base.push_back(circle_point(parse_rational(l).convert_to<double>()));
  }
  return sequence_command(c, sp, anchors, base, [&](const std::string& s) { return circle_sequence(s, c.horizon); });
}

template <class Scalar>
Outcome finite_sequence_command(const RunConfig& c) {
  const auto input = load_space<Scalar>(input_path(c));
  const auto sp = as_procedural(input);
  std::vector<std::size_t> anchors, base;
  for (const auto& a : c.anchors) anchors.push_back(label_index(input.labels(), a));
  for (std::size_t i = 0; i < input.size(); ++i) base.push_back(i);
  return sequence_command(c, sp, anchors, base,
                          [&](const std::string& s) { return index_sequence(s, c.horizon, input.labels()); });
}

template <class Scalar>
FiniteSpace<Scalar> fixture_space(const RunConfig& c) {
  if (c.args.empty()) throw InputError("fixture expects a name");
  const std::string& name = c.args[0];
  if (name == "circle") return circle_space<Scalar>(c.grid);
  if (name == "integer-line") return integer_line<Scalar>(c.size);
  if (name == "extended-line") return extended_integer_line<Scalar>(c.size);
  if constexpr (ScalarTraits<Scalar>::exact) {
    if (name == "punctured-interval") return punctured_interval(c.size);
    if (name == "doubled-zero") return doubled_zero_line<Rational>(parse_rational(c.extent), c.grid);
    if (name == "random-metric") return random_metric(c.size, c.seed);
    if (name == "random-quasimetric") return random_quasimetric(c.size, parse_rational(c.K), c.seed);
  } else {
    if (name == "punctured-interval") return punctured_interval(c.size).template cast<double>();
    if (name == "doubled-zero") return doubled_zero_line<Rational>(parse_rational(c.extent), c.grid).template cast<double>();
    if (name == "random-metric") return random_metric(c.size, c.seed).template cast<double>();
    if (name == "random-quasimetric") return random_quasimetric(c.size, parse_rational(c.K), c.seed).template cast<double>();
  }
  throw InputError("unknown fixture '" + name + "'");
}

template <class Scalar>
Outcome fixture_command(const RunConfig& c) {
  const auto sp = fixture_space<Scalar>(c);
  if (c.format == "csv") return {nlohmann::json(), 0, space_to_csv(sp)};
  if (c.format != "json") throw InputError("--format expects json or csv");
  return {space_to_json(sp), 0};
}

Outcome dispatch(const RunConfig& c) {
  static const std::vector<std::string> known = {"validate", "crt",      "axioms",     "derive-da", "verify-da",
                                                 "involute", "quasi-k",  "corner",     "symmetry",  "boundedify",
                                                 "cauchy",   "equivalent", "adjoin",   "fixture"};
  if (std::find(known.begin(), known.end(), c.command) == known.end())
    throw InputError("unknown command '" + c.command + "'");
  if (c.mode != "exact" && c.mode != "float") throw InputError("--mode expects exact or float");
  if (!(c.tol > 0)) throw InputError("--tol must be positive");
  if (c.budget < 1) throw InputError("--budget must be at least 1");
  if (c.horizon < 4) throw InputError("--horizon must be at least 4");
  const bool exact = c.mode == "exact";
  if (c.command == "fixture") return exact ? fixture_command<Rational>(c) : fixture_command<double>(c);
  const bool sequence_cmd = c.command == "cauchy" || c.command == "adjoin" || (c.command == "equivalent" && !c.sequences.empty());
  if (sequence_cmd) {
    if (c.ambient == "line") return rational_sequence_command(c, rational_line());
    if (c.ambient == "interval") return rational_sequence_command(c, unit_interval());
    if (c.ambient == "circle") return circle_sequence_command(c);
    if (c.ambient == "input") return exact ? finite_sequence_command<Rational>(c) : finite_sequence_command<double>(c);
    throw InputError("--ambient expects line, interval, circle or input");
  }
  if (c.table) return table_command(c);
  return exact ? space_command<Rational>(c) : space_command<double>(c);
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    o = dispatch(c);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    o = {{{"check", c.command}, {"status", "error"}, {"error", e.what()}}, 2};
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    o = {{{"check", c.command}, {"status", "error"}, {"error", e.what()}}, 2};
  } catch (const Error& e) {
    // Raised conditions such as NoGoodPair: the input could not be checked.
    err << "error: " << e.what() << "\n";
    o = {{{"check", c.command}, {"status", "error"}, {"error", e.what()}}, 2};
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    o = {{{"check", c.command}, {"status", "error"}, {"error", e.what()}}, 2};
  }
  std::string payload;
  if (!o.text.empty()) {
    payload = o.text;
  } else {
    o.body["schema_version"] = kReportSchemaVersion;
    o.body["config"] = config_json(c);
    payload = o.body.dump(2) + "\n";
  }
  if (c.out.empty()) {
    out << payload;
  } else {
    try {
      write_file_atomic(c.out, payload);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return o.code;
}

}  // namespace moebius

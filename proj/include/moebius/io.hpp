#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "moebius/errors.hpp"
#include "moebius/extscalar.hpp"
#include "moebius/space.hpp"
#include "moebius/structure.hpp"

namespace moebius {

// Space documents:
//   JSON  {"points": [labels], "matrix": [[...]], "infinity": optional label}
//   CSV   header row of labels, then one row per point (optionally led by its label)
// Entries are numbers, "p/q" strings, decimal strings or "inf".

std::string read_file(const std::string& path);

/// Writes through a temporary file and a rename, so readers never see a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

/// Parses a JSON document; syntax errors become ParseError naming the line.
nlohmann::json parse_json(const std::string& text, const std::string& source);

/// An extended scalar from a JSON number or string; `field` names it in errors.
template <class Scalar>
ExtScalar<Scalar> parse_ext(const nlohmann::json& v, const std::string& field) {
  std::string text;
  if (v.is_number()) {
    text = v.dump();
  } else if (v.is_string()) {
    text = v.get<std::string>();
  } else {
    throw ParseError(field + ": expected a number or a string");
  }
  if (text == "inf" || text == "Infinity" || text == "+inf") return ExtScalar<Scalar>::infinity();
  Rational r;
  try {
    r = parse_rational(text);
  } catch (const ParseError& e) {
    throw ParseError(field + ": " + e.what());
  }
  if (r < 0) throw ParseError(field + ": negative distance " + text);
  if constexpr (ScalarTraits<Scalar>::exact)
    return ExtScalar<Scalar>(r);
  else
    return ExtScalar<Scalar>(r.convert_to<double>());
}

template <class Scalar>
nlohmann::json ext_to_json(const ExtScalar<Scalar>& v) {
  if (v.is_infinite()) return "inf";
  if constexpr (ScalarTraits<Scalar>::exact) {
    const std::string s = to_text_scalar(v.value());
    if (s.find('/') != std::string::npos) return s;
    return nlohmann::json::parse(s);
  } else {
    return v.value();
  }
}

namespace detail {

template <class Scalar>
FiniteSpace<Scalar> assemble(std::vector<std::string> labels, const std::vector<std::vector<ExtScalar<Scalar>>>& rows,
                             std::optional<std::size_t> infinity) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  DistanceMatrix<Scalar> f = DistanceMatrix<Scalar>::Zero(n, n);
  typename FiniteSpace<Scalar>::Mask mask = FiniteSpace<Scalar>::Mask::Constant(n, n, false);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      mask(i, j) = v.is_infinite();
      if (v.is_finite()) f(i, j) = v.value();
    }
  return FiniteSpace<Scalar>(std::move(labels), std::move(f), std::move(mask), infinity);
}

}  // namespace detail

template <class Scalar>
FiniteSpace<Scalar> space_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("document: expected an object");
  if (!j.contains("points") || !j["points"].is_array()) throw ParseError("points: missing or not an array");
  if (!j.contains("matrix") || !j["matrix"].is_array()) throw ParseError("matrix: missing or not an array");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < j["points"].size(); ++i) {
    const auto& p = j["points"][i];
    if (p.is_string())
      labels.push_back(p.get<std::string>());
    else if (p.is_number())
      labels.push_back(p.dump());
    else
      throw ParseError("points[" + std::to_string(i) + "]: expected a string label");
  }
  const std::size_t n = labels.size();
  const auto& m = j["matrix"];
  if (m.size() != n)
    throw ParseError("matrix: has " + std::to_string(m.size()) + " rows for " + std::to_string(n) + " points");
  std::vector<std::vector<ExtScalar<Scalar>>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row = "matrix[" + std::to_string(i) + "]";
    if (!m[i].is_array() || m[i].size() != n) throw ParseError(row + ": expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) rows[i].push_back(parse_ext<Scalar>(m[i][k], row + "[" + std::to_string(k) + "]"));
  }
  std::optional<std::size_t> inf;
  if (j.contains("infinity") && !j["infinity"].is_null()) {
    if (!j["infinity"].is_string()) throw ParseError("infinity: expected a label");
    const auto label = j["infinity"].get<std::string>();
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw ParseError("infinity: unknown point '" + label + "'");
    inf = static_cast<std::size_t>(it - labels.begin());
  }
  return detail::assemble<Scalar>(std::move(labels), rows, inf);
}

template <class Scalar>
nlohmann::json space_to_json(const FiniteSpace<Scalar>& sp) {
  nlohmann::json m = nlohmann::json::array();
  for (std::size_t i = 0; i < sp.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < sp.size(); ++k) row.push_back(ext_to_json(sp.dist(i, k)));
    m.push_back(row);
  }
  nlohmann::json j = {{"points", sp.labels()}, {"matrix", m}};
  j["infinity"] = sp.infinity() ? nlohmann::json(sp.label(*sp.infinity())) : nlohmann::json(nullptr);
  return j;
}

/// Splits CSV text into trimmed cells per non-empty line, remembering line numbers.
struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> cells;
};
std::vector<CsvRow> split_csv(const std::string& text);

/// A point is taken as the point at infinity when all its off-diagonal entries are "inf".
template <class Scalar>
FiniteSpace<Scalar> space_from_csv(const std::string& text) {
  const auto rows = split_csv(text);
  if (rows.empty()) throw ParseError("line 1: empty document");
  std::vector<std::string> labels = rows[0].cells;
  if (!labels.empty() && labels[0].empty()) labels.erase(labels.begin());
  const std::size_t n = labels.size();
  if (rows.size() != n + 1)
    throw ParseError("line " + std::to_string(rows.back().line) + ": expected " + std::to_string(n) + " data rows, found " +
                     std::to_string(rows.size() - 1));
  std::vector<std::vector<ExtScalar<Scalar>>> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto cells = rows[i + 1].cells;
    const std::string where = "line " + std::to_string(rows[i + 1].line);
    if (cells.size() == n + 1) {
      if (cells[0] != labels[i]) throw ParseError(where + ": row label '" + cells[0] + "' does not match '" + labels[i] + "'");
      cells.erase(cells.begin());
    }
    if (cells.size() != n) throw ParseError(where + ": expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k)
      m[i].push_back(parse_ext<Scalar>(nlohmann::json(cells[k]), where + ", column " + std::to_string(k + 1)));
  }
  std::optional<std::size_t> inf;
  for (std::size_t i = 0; i < n && n > 1; ++i) {
    bool all = true;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i && m[i][k].is_finite()) all = false;
    if (all) {
      if (inf) {
        inf.reset();
        break;
      }
      inf = i;
    }
  }
  return detail::assemble<Scalar>(std::move(labels), m, inf);
}

template <class Scalar>
std::string space_to_csv(const FiniteSpace<Scalar>& sp) {
  std::string out;
  for (std::size_t i = 0; i < sp.size(); ++i) out += (i ? "," : "") + sp.label(i);
  out += "\n";
  for (std::size_t i = 0; i < sp.size(); ++i) {
    for (std::size_t k = 0; k < sp.size(); ++k) {
      const auto d = sp.dist(i, k);
      out += (k ? "," : "") + (d.is_infinite() ? std::string("inf") : to_text_scalar(d.value()));
    }
    out += "\n";
  }
  return out;
}

/// Loads a space from a path; ".csv" selects CSV, anything else JSON.
template <class Scalar>
FiniteSpace<Scalar> load_space(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) return space_from_csv<Scalar>(text);
  return space_from_json<Scalar>(parse_json(text, path));
}

/// {"points": [...], "entries": [{"quad": [w,x,y,z], "M": [x,y,z]}], "fill_degenerate": bool}.
/// M entries are numbers or "inf" / "-inf".
MoebiusStructure<double> table_from_json(const nlohmann::json& j, Tolerance tol = {});

}  // namespace moebius

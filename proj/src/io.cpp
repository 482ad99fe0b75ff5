#include "moebius/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

namespace moebius {

std::string ScalarTraits<double>::to_string(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Rational pow10(long e) {
  Rational r(1);
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text = raw;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.erase(text.begin());
  if (text.empty()) throw ParseError("empty number");
  bool negative = false;
  std::string body = text;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    body.erase(body.begin());
  }
  Rational value;
  if (const auto slash = body.find('/'); slash != std::string::npos) {
    const std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed fraction '" + text + "'");
    const Rational d(den);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    value = Rational(num) / d;
  } else {
    std::string mantissa = body;
    long exponent = 0;
    if (const auto e = body.find_first_of("eE"); e != std::string::npos) {
      mantissa = body.substr(0, e);
      std::string ex = body.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) {
        eneg = ex[0] == '-';
        ex.erase(ex.begin());
      }
      if (!all_digits(ex) || ex.size() > 6) throw ParseError("malformed exponent in '" + text + "'");
      exponent = std::stol(ex) * (eneg ? -1 : 1);
    }
    std::string ip = mantissa, fp;
    if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
      ip = mantissa.substr(0, dot);
      fp = mantissa.substr(dot + 1);
    }
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw ParseError("malformed number '" + text + "'");
    const std::string digits = (ip.empty() ? "0" : ip) + fp;
    value = Rational(digits);
    exponent -= static_cast<long>(fp.size());
    if (exponent >= 0)
      value *= pow10(exponent);
    else
      value /= pow10(-exponent);
  }
  return negative ? Rational(-value) : value;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path + ": cannot write");
    out << content;
    if (!out) throw std::runtime_error(path + ": write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error(path + ": rename failed: " + ec.message());
}

nlohmann::json parse_json(const std::string& text, const std::string& source) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
    throw ParseError(source + ": line " + std::to_string(line) + ": malformed JSON");
  }
}

std::vector<CsvRow> split_csv(const std::string& text) {
  std::vector<CsvRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    CsvRow row{number, {}};
    std::string cell;
    std::istringstream cells(line);
    while (std::getline(cells, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\"");
      const auto e = cell.find_last_not_of(" \t\"");
      row.cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (line.back() == ',') row.cells.emplace_back();
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

ExtLog parse_log(const nlohmann::json& v, const std::string& field) {
  if (v.is_number()) return ExtLog(v.get<double>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return ExtLog::pos_inf();
    if (s == "-inf") return ExtLog::neg_inf();
    try {
      return ExtLog(parse_rational(s).convert_to<double>());
    } catch (const ParseError& e) {
      throw ParseError(field + ": " + e.what());
    }
  }
  throw ParseError(field + ": expected a number, \"inf\" or \"-inf\"");
}

}  // namespace

MoebiusStructure<double> table_from_json(const nlohmann::json& j, Tolerance tol) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    throw ParseError("points: missing or not an array");
  if (!j.contains("entries") || !j["entries"].is_array()) throw ParseError("entries: missing or not an array");
  std::vector<std::string> labels;
  for (const auto& p : j["points"]) labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
  auto index = [&](const nlohmann::json& v, const std::string& field) {
    const std::string l = v.is_string() ? v.get<std::string>() : v.dump();
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw ParseError(field + ": unknown point '" + l + "'");
    return static_cast<std::size_t>(it - labels.begin());
  };
  std::vector<TableEntry> entries;
  for (std::size_t i = 0; i < j["entries"].size(); ++i) {
    const auto& e = j["entries"][i];
    const std::string where = "entries[" + std::to_string(i) + "]";
    if (!e.contains("quad") || !e["quad"].is_array() || e["quad"].size() != 4)
      throw ParseError(where + ".quad: expected four points");
    if (!e.contains("M") || !e["M"].is_array() || e["M"].size() != 3)
      throw ParseError(where + ".M: expected three components");
    TableEntry t;
    for (std::size_t k = 0; k < 4; ++k) t.quad[k] = index(e["quad"][k], where + ".quad[" + std::to_string(k) + "]");
    for (std::size_t k = 0; k < 3; ++k)
      t.value[static_cast<int>(k)] = parse_log(e["M"][k], where + ".M[" + std::to_string(k) + "]");
    if (!is_admissible(t.quad)) throw ParseError(where + ".quad: inadmissible quadruple");
    if (!is_valid(t.value, tol)) throw ParseError(where + ".M: not a valid log triple");
    entries.push_back(t);
  }
  const bool fill = j.value("fill_degenerate", false);
  return table_structure(std::move(labels), entries, fill, tol);
}

}  // namespace moebius

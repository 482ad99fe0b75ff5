#include "moebius/report.hpp"

#include <algorithm>

namespace moebius {

void Report::merge(const Report& other) {
  for (const auto& [k, v] : other.examined) examined[k] += v;
  for (const auto& w : other.witnesses) {
    const std::size_t seen = std::count_if(witnesses.begin(), witnesses.end(),
                                           [&](const Witness& x) { return x.property == w.property; });
    if (seen < max_witnesses) witnesses.push_back(w);
  }
  for (const auto& [k, v] : other.violations) violations[k] += v;
  for (const auto& [k, v] : other.values) values.emplace(k, v);
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : r.witnesses) w.push_back({{"property", x.property}, {"tuple", x.tuple}, {"detail", x.detail}});
  nlohmann::json j = {{"check", r.check},
                      {"status", r.status()},
                      {"witnesses", w},
                      {"violations", r.violations},
                      {"examined", r.examined},
                      {"sampled", r.sampled}};
  if (!r.values.empty()) j["values"] = r.values;
  if (r.sampled) {
    j["budget"] = r.budget;
    j["seed"] = r.seed;
  }
  return j;
}

}  // namespace moebius

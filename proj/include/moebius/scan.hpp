#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "moebius/numeric.hpp"
#include "moebius/report.hpp"
#include "moebius/space.hpp"

namespace moebius {

/// Parameters shared by brute-force scans.
struct ScanOptions {
  std::size_t exhaustive_limit = 12;  // domains up to this size are scanned exhaustively
  std::size_t budget = 200000;        // tuples drawn per property in sampled mode
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::size_t max_witnesses = 16;
  Tolerance tol{};
};

/// Up to `budget` distinct K-tuples over {0..n-1} accepted by `keep`, drawn
/// uniformly without replacement in a seed-determined order.
template <std::size_t K, class Keep>
std::vector<std::array<std::size_t, K>> sample_tuples(std::size_t n, std::size_t budget, std::uint64_t seed,
                                                      Keep&& keep) {
  std::vector<std::array<std::size_t, K>> out;
  if (n == 0 || budget == 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::unordered_set<std::uint64_t> seen;
  const std::size_t max_attempts = 50 * budget + 1000;
  for (std::size_t attempt = 0; attempt < max_attempts && out.size() < budget; ++attempt) {
    std::array<std::size_t, K> t;
    std::uint64_t code = 0;
    for (auto& v : t) {
      v = pick(rng);
      code = code * n + v;
    }
    if (!keep(t) || !seen.insert(code).second) continue;
    out.push_back(t);
  }
  return out;
}

/// Every admissible K-tuple accepted by `keep` (exhaustive mode) or a sample of them.
template <std::size_t K, class Keep>
std::vector<std::array<std::size_t, K>> scan_tuples(std::size_t n, const ScanOptions& opt, std::uint64_t salt,
                                                    Keep&& keep) {
  if (n <= opt.exhaustive_limit) {
    std::vector<std::array<std::size_t, K>> out;
    for_each_admissible<K>(n, [&](const std::array<std::size_t, K>& t) {
      if (keep(t)) out.push_back(t);
    });
    return out;
  }
  return sample_tuples<K>(n, opt.budget, opt.seed + salt,
                          [&](const std::array<std::size_t, K>& t) { return is_admissible(t) && keep(t); });
}

/// Runs `fn(item, report)` over contiguous index ranges on `workers` threads
/// and merges the partial reports in range order, so the result does not
/// depend on the worker count.
template <class Item, class Fn>
Report parallel_scan(const std::vector<Item>& items, unsigned workers, std::size_t max_witnesses, Fn&& fn) {
  const std::size_t parts = std::max<std::size_t>(1, std::min<std::size_t>(workers, items.size()));
  std::vector<Report> partial(parts);
  auto run = [&](std::size_t part) {
    Report& r = partial[part];
    r.max_witnesses = max_witnesses;
    const std::size_t begin = items.size() * part / parts;
    const std::size_t end = items.size() * (part + 1) / parts;
    for (std::size_t i = begin; i < end; ++i) fn(items[i], r);
  };
  if (parts == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t p = 0; p < parts; ++p) threads.emplace_back(run, p);
    for (auto& t : threads) t.join();
  }
  Report out;
  out.max_witnesses = max_witnesses;
  for (const auto& r : partial) out.merge(r);
  return out;
}

template <std::size_t K>
std::vector<std::string> tuple_labels(const std::vector<std::string>& labels, const std::array<std::size_t, K>& t) {
  std::vector<std::string> out;
  for (auto i : t) out.push_back(labels.at(i));
  return out;
}

}  // namespace moebius

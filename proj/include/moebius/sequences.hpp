#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "moebius/errors.hpp"
#include "moebius/report.hpp"
#include "moebius/space.hpp"
#include "moebius/structure.hpp"

namespace moebius {

/// A sequence x_1, x_2, ... given by a pure generator, inspected up to `horizon`.
/// `limit` optionally names a closed-form limit point of the ambient space.
template <class P>
struct SequenceHandle {
  std::function<P(std::size_t)> gen;
  std::size_t horizon = 10000;
  std::string label;
  std::optional<P> limit;

  P operator()(std::size_t n) const { return gen(n); }
};

/// Diagnostic parameters. All verdicts are statements at the horizon, not about limits.
struct SequenceOptions {
  double delta = 1e-6;          // floor for good pairs
  double tau = 1e-3;            // threshold for the Cauchy diagnostics
  std::size_t tail_samples = 40;
  std::size_t trend_levels = 6;
  double min_decay = 0.25;      // a trend counts as vanishing when its log-log slope is at most -min_decay
  std::size_t candidates = 32;  // seeded sample size for good-pair candidates
  std::uint64_t seed = 1;
  Tolerance tol{};
};

/// Sampled indices of the tail window [lo, hi]: evenly spaced points and their successors.
inline std::vector<std::size_t> tail_indices(std::size_t lo, std::size_t hi, std::size_t samples) {
  std::set<std::size_t> s;
  if (hi < lo) return {};
  const std::size_t span = hi - lo;
  for (std::size_t k = 0; k <= samples; ++k) {
    const std::size_t i = lo + span * k / std::max<std::size_t>(samples, 1);
    s.insert(i);
    if (i + 1 <= hi) s.insert(i + 1);
  }
  return {s.begin(), s.end()};
}

template <class Scalar>
double as_double(const ExtScalar<Scalar>& v) {
  return v.to_double();
}

struct GoodPairReport {
  std::size_t y = 0;  // indices into the candidate list
  std::size_t z = 0;
  double floor = 0.0;  // min over the tail of min(d(x_n, y), d(x_n, z))
  std::size_t tail_lo = 0;
  std::size_t tail_hi = 0;
};

/// Candidate pairs whose tail distances to the sequence stay above delta.
/// The tail window is [horizon/2, horizon].
template <class P, class Scalar>
std::vector<GoodPairReport> good_pairs(const SequenceHandle<P>& seq, const ProceduralSpace<P, Scalar>& sp,
                                       const std::vector<P>& candidates, const SequenceOptions& opt = {}) {
  const std::size_t lo = std::max<std::size_t>(1, seq.horizon / 2), hi = seq.horizon;
  std::vector<double> floor(candidates.size(), std::numeric_limits<double>::infinity());
  for (std::size_t n = lo; n <= hi; ++n) {
    const P x = seq(n);
    for (std::size_t c = 0; c < candidates.size(); ++c) floor[c] = std::min(floor[c], as_double(sp.dist(x, candidates[c])));
  }
  std::vector<GoodPairReport> out;
  for (std::size_t a = 0; a < candidates.size(); ++a)
    for (std::size_t b = a + 1; b < candidates.size(); ++b) {
      if (sp.dist(candidates[a], candidates[b]).is_zero()) continue;
      if (sp.is_infinity(candidates[a]) || sp.is_infinity(candidates[b])) continue;
      const double f = std::min(floor[a], floor[b]);
      if (f >= opt.delta) out.push_back({a, b, f, lo, hi});
    }
  return out;
}

struct Condition3Result {
  double max_tail = 0.0;  // max of d(x_n,x_m) d(y,z) / (d(x_n,y) d(x_m,z)) over the sampled tail
  double slope = 0.0;     // log-log trend of the windowed maxima; -inf when the tail is identically 0
  bool satisfied = false;
};

struct Condition2Result {
  double residual = 0.0;      // max-norm distance of crt(x_n,x_m,y,z) from (0, 1/2, 1/2)
  double middle_ratio = 0.0;  // max |d(x_n,y)d(x_m,z) / (d(x_n,z)d(x_m,y)) - 1|
  bool satisfied = false;
};

namespace detail {

/// A distance or a product of distances in floating point, with the number of
/// infinite factors kept apart so that infinities cancel as in FormalProduct.
struct Approx {
  double v = 0.0;
  int inf = 0;
};

template <class Scalar>
Approx approx(const ExtScalar<Scalar>& d) {
  return d.is_infinite() ? Approx{1.0, 1} : Approx{d.to_double(), 0};
}

inline Approx operator*(Approx a, Approx b) { return {a.v * b.v, a.inf + b.inf}; }

inline double ratio(Approx p, Approx q) {
  if (p.inf != q.inf) return p.inf > q.inf ? std::numeric_limits<double>::infinity() : 0.0;
  if (q.v == 0) return p.v == 0 ? std::numeric_limits<double>::quiet_NaN() : std::numeric_limits<double>::infinity();
  return p.v / q.v;
}

/// The sampled tail windows of one sequence: [H/2, H] and the halving windows
/// used for the trend, with all mutual distances evaluated once.
template <class P>
struct TailCache {
  std::vector<std::size_t> index;
  std::vector<P> points;
  std::vector<Approx> dist;  // row-major, index.size() squared

  std::size_t pos(std::size_t n) const {
    return static_cast<std::size_t>(std::lower_bound(index.begin(), index.end(), n) - index.begin());
  }
  const Approx& d(std::size_t i, std::size_t j) const { return dist[i * index.size() + j]; }

  template <class Scalar>
  std::vector<Approx> to(const ProceduralSpace<P, Scalar>& sp, const P& y) const {
    std::vector<Approx> out;
    out.reserve(points.size());
    for (const auto& x : points) out.push_back(approx(sp.dist(x, y)));
    return out;
  }
};

inline std::size_t trend_samples(std::size_t samples) { return samples / 2 + 2; }

template <class P, class Scalar>
TailCache<P> tail_cache(const SequenceHandle<P>& seq, const ProceduralSpace<P, Scalar>& sp, const SequenceOptions& opt) {
  std::set<std::size_t> all;
  for (auto n : tail_indices(std::max<std::size_t>(1, seq.horizon / 2), seq.horizon, opt.tail_samples)) all.insert(n);
  for (std::size_t k = 1; k <= opt.trend_levels; ++k) {
    const std::size_t lo = seq.horizon >> k, hi = seq.horizon >> (k - 1);
    if (lo < 1) break;
    for (auto n : tail_indices(lo, hi, trend_samples(opt.tail_samples))) all.insert(n);
  }
  TailCache<P> c;
  c.index.assign(all.begin(), all.end());
  for (auto n : c.index) c.points.push_back(seq(n));
  const std::size_t m = c.index.size();
  c.dist.resize(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) c.dist[i * m + j] = c.dist[j * m + i] = approx(sp.dist(c.points[i], c.points[j]));
  return c;
}

/// max over ordered pairs n != m of sampled indices in [lo, hi] of f(i, j), where
/// i and j are positions in the cache.
template <class P, class F>
double window_max(const TailCache<P>& c, std::size_t lo, std::size_t hi, std::size_t samples, F&& f) {
  std::vector<std::size_t> pos;
  for (auto n : tail_indices(lo, hi, samples)) pos.push_back(c.pos(n));
  double best = 0.0;
  for (auto i : pos)
    for (auto j : pos)
      if (i != j) best = std::max(best, f(i, j));
  return best;
}

/// Least-squares slope of log v against log n, where v(lo, hi, samples) is the
/// windowed maximum over [H/2^k, H/2^(k-1)].
template <class V>
double trend_slope(std::size_t horizon, std::size_t levels, std::size_t samples, V&& window) {
  std::vector<double> xs, ys;
  double tail = -1.0;
  for (std::size_t k = 1; k <= levels; ++k) {
    const std::size_t lo = horizon >> k, hi = horizon >> (k - 1);
    if (lo < 1) break;
    const double v = window(lo, hi, trend_samples(samples));
    if (k == 1) tail = v;
    if (v > 0) {
      xs.push_back(std::log(static_cast<double>(lo)));
      ys.push_back(std::log(v));
    }
  }
  if (tail == 0.0) return -std::numeric_limits<double>::infinity();
  if (xs.size() < 2) return 0.0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(ys.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx == 0 ? 0.0 : sxy / sxx;
}

template <class P>
Condition3Result condition3(const TailCache<P>& c, std::size_t horizon, const std::vector<Approx>& dy,
                            const std::vector<Approx>& dz, Approx dyz, const SequenceOptions& opt) {
  auto f = [&](std::size_t i, std::size_t j) { return ratio(c.d(i, j) * dyz, dy[i] * dz[j]); };
  auto window = [&](std::size_t lo, std::size_t hi, std::size_t samples) { return window_max(c, lo, hi, samples, f); };
  Condition3Result r;
  r.max_tail = window(std::max<std::size_t>(1, horizon / 2), horizon, opt.tail_samples);
  r.slope = trend_slope(horizon, opt.trend_levels, opt.tail_samples, window);
  r.satisfied = r.max_tail <= opt.tau && r.slope <= -opt.min_decay;
  return r;
}

template <class P>
Condition2Result condition2(const TailCache<P>& c, std::size_t horizon, const std::vector<Approx>& dy,
                            const std::vector<Approx>& dz, Approx dyz, const SequenceOptions& opt) {
  Condition2Result r;
  std::vector<std::size_t> pos;
  for (auto n : tail_indices(std::max<std::size_t>(1, horizon / 2), horizon, opt.tail_samples)) pos.push_back(c.pos(n));
  for (auto i : pos)
    for (auto j : pos) {
      if (i == j) continue;
      const std::array<Approx, 3> raw = {c.d(i, j) * dyz, dy[i] * dz[j], dz[i] * dy[j]};
      // normalize: only the factors of the highest infinity degree survive
      const int top = std::max({raw[0].inf, raw[1].inf, raw[2].inf});
      std::array<double, 3> t{};
      double sum = 0;
      for (std::size_t k = 0; k < 3; ++k) sum += (t[k] = raw[k].inf == top ? raw[k].v : 0.0);
      if (sum > 0) {
        const double dist = std::max({std::abs(t[0] / sum), std::abs(t[1] / sum - 0.5), std::abs(t[2] / sum - 0.5)});
        r.residual = std::max(r.residual, dist);
      } else {
        r.residual = std::max(r.residual, 1.0);
      }
      const double mid = ratio(raw[1], raw[2]);
      r.middle_ratio = std::max(r.middle_ratio, std::isinf(mid) ? mid : std::abs(mid - 1.0));
    }
  r.satisfied = r.residual <= opt.tau;
  return r;
}

}  // namespace detail

/// Condition 3: d(x_n,x_m) d(y,z) / (d(x_n,y) d(x_m,z)) -> 0. Satisfied at the
/// horizon when the tail maximum is at most tau and the trend is decreasing.
template <class P, class Scalar>
Condition3Result condition3(const SequenceHandle<P>& seq, const P& y, const P& z, const ProceduralSpace<P, Scalar>& sp,
                            const SequenceOptions& opt = {}) {
  const auto c = detail::tail_cache(seq, sp, opt);
  return detail::condition3(c, seq.horizon, c.to(sp, y), c.to(sp, z), detail::approx(sp.dist(y, z)), opt);
}

/// Condition 2: crt(x_n, x_m, y, z) -> (0 : 1 : 1).
template <class P, class Scalar>
Condition2Result condition2(const SequenceHandle<P>& seq, const P& y, const P& z, const ProceduralSpace<P, Scalar>& sp,
                            const SequenceOptions& opt = {}) {
  const auto c = detail::tail_cache(seq, sp, opt);
  return detail::condition2(c, seq.horizon, c.to(sp, y), c.to(sp, z), detail::approx(sp.dist(y, z)), opt);
}

enum class Classification { bounded_cauchy, divergent, not_cauchy, inconclusive };

inline std::string to_string(Classification c) {
  switch (c) {
    case Classification::bounded_cauchy: return "bounded-cauchy";
    case Classification::divergent: return "divergent";
    case Classification::not_cauchy: return "not-cauchy";
    default: return "inconclusive";
  }
}

struct PairDiagnostics {
  GoodPairReport pair;
  Condition3Result c3;
  Condition2Result c2;
};

struct CauchyVerdict {
  Classification classification = Classification::inconclusive;
  std::vector<PairDiagnostics> pairs;
  std::optional<std::size_t> witness;  // index into pairs of a pair satisfying condition 3
  double condition3_margin = 0.0;      // smallest tail maximum over good pairs
  double condition3_slope = 0.0;
  double condition2_residual = 0.0;
  double tail_spread = 0.0;     // max d(x_n, x_m) over the sampled tail
  double reference_max = 0.0;   // max tail distance to the first candidate
  double reference_min = 0.0;   // min tail distance to every candidate
};

/// The seeded candidate sample followed by the anchors.
template <class P, class Scalar>
std::vector<P> default_candidates(const ProceduralSpace<P, Scalar>& sp, const std::vector<P>& anchors,
                                  const SequenceOptions& opt = {}) {
  std::vector<P> out = sp.sample(opt.candidates, opt.seed);
  out.insert(out.end(), anchors.begin(), anchors.end());
  return out;
}

/// Condition 3 on the good pairs decides Cauchy-ness; a Cauchy sequence is
/// bounded when its tail stays within 1/tau of a reference and shrinks below
/// tau, divergent when the tail leaves every reference beyond 1/tau.
template <class P, class Scalar>
CauchyVerdict classify(const SequenceHandle<P>& seq, const ProceduralSpace<P, Scalar>& sp, const std::vector<P>& candidates,
                       const SequenceOptions& opt = {}) {
  const auto pairs = good_pairs(seq, sp, candidates, opt);
  if (pairs.empty()) throw NoGoodPair();
  const auto cache = detail::tail_cache(seq, sp, opt);
  std::vector<std::vector<detail::Approx>> to_candidate;
  for (const auto& c : candidates) to_candidate.push_back(cache.to(sp, c));
  CauchyVerdict v;
  v.condition3_margin = std::numeric_limits<double>::infinity();
  for (const auto& gp : pairs) {
    const auto& dy = to_candidate[gp.y];
    const auto& dz = to_candidate[gp.z];
    const auto dyz = detail::approx(sp.dist(candidates[gp.y], candidates[gp.z]));
    PairDiagnostics d{gp, detail::condition3(cache, seq.horizon, dy, dz, dyz, opt),
                      detail::condition2(cache, seq.horizon, dy, dz, dyz, opt)};
    if (d.c3.satisfied && !v.witness) v.witness = v.pairs.size();
    v.condition3_margin = std::min(v.condition3_margin, d.c3.max_tail);
    v.pairs.push_back(d);
  }
  if (v.witness) {
    v.condition3_slope = v.pairs[*v.witness].c3.slope;
    v.condition2_residual = v.pairs[*v.witness].c2.residual;
  }
  const std::size_t lo = std::max<std::size_t>(1, seq.horizon / 2), hi = seq.horizon;
  auto value = [](const detail::Approx& a) { return a.inf ? std::numeric_limits<double>::infinity() : a.v; };
  v.tail_spread = detail::window_max(cache, lo, hi, opt.tail_samples,
                                     [&](std::size_t i, std::size_t j) { return value(cache.d(i, j)); });
  v.reference_min = std::numeric_limits<double>::infinity();
  for (auto n : tail_indices(lo, hi, opt.tail_samples)) {
    const std::size_t i = cache.pos(n);
    v.reference_max = std::max(v.reference_max, value(to_candidate.front()[i]));
    for (const auto& dc : to_candidate) v.reference_min = std::min(v.reference_min, value(dc[i]));
  }
  if (!v.witness) {
    v.classification = Classification::not_cauchy;
  } else if (v.tail_spread <= opt.tau && v.reference_max < 1.0 / opt.tau) {
    v.classification = Classification::bounded_cauchy;
  } else if (v.reference_min >= 1.0 / opt.tau) {
    v.classification = Classification::divergent;
  } else {
    v.classification = Classification::inconclusive;
  }
  return v;
}

struct EquivalenceResult {
  bool equivalent = false;
  std::size_t common_pairs = 0;
  double max_tail = 0.0;  // largest diagonal tail value over common good pairs
  double worst_slope = -std::numeric_limits<double>::infinity();
};

/// c(x_n, x'_n, y, z) -> -inf for every candidate pair good for both sequences.
/// The diagonal ratio may decay slowly (like 1/n for n and -n), so a pair
/// passes on its trend alone: identically zero or slope at most -min_decay.
template <class P, class Scalar>
EquivalenceResult cauchy_equivalent(const SequenceHandle<P>& s1, const SequenceHandle<P>& s2,
                                    const ProceduralSpace<P, Scalar>& sp, const std::vector<P>& candidates,
                                    const SequenceOptions& opt = {}) {
  const auto g1 = good_pairs(s1, sp, candidates, opt);
  const auto g2 = good_pairs(s2, sp, candidates, opt);
  std::set<std::pair<std::size_t, std::size_t>> second;
  for (const auto& g : g2) second.insert({g.y, g.z});
  EquivalenceResult r;
  r.equivalent = true;
  const std::size_t horizon = std::min(s1.horizon, s2.horizon);

  // The diagonal value depends on n only: sample each window's indices once.
  SequenceHandle<P> h1 = s1, h2 = s2;
  h1.horizon = h2.horizon = horizon;
  const auto c1 = detail::tail_cache(h1, sp, opt), c2 = detail::tail_cache(h2, sp, opt);
  std::vector<detail::Approx> diag;
  for (std::size_t i = 0; i < c1.index.size(); ++i) diag.push_back(detail::approx(sp.dist(c1.points[i], c2.points[i])));
  std::map<std::size_t, std::vector<detail::Approx>> to1, to2;
  auto to = [&](std::map<std::size_t, std::vector<detail::Approx>>& memo, const detail::TailCache<P>& c, std::size_t k)
      -> const std::vector<detail::Approx>& {
    auto it = memo.find(k);
    if (it == memo.end()) it = memo.emplace(k, c.to(sp, candidates[k])).first;
    return it->second;
  };

  for (const auto& g : g1) {
    if (!second.count({g.y, g.z})) continue;
    ++r.common_pairs;
    const auto& dy = to(to1, c1, g.y);
    const auto& dz = to(to2, c2, g.z);
    const auto dyz = detail::approx(sp.dist(candidates[g.y], candidates[g.z]));
    auto window = [&](std::size_t lo, std::size_t hi, std::size_t samples) {
      double best = 0.0;
      for (auto n : tail_indices(lo, hi, samples)) {
        const std::size_t i = c1.pos(n);
        best = std::max(best, detail::ratio(diag[i] * dyz, dy[i] * dz[i]));
      }
      return best;
    };
    const double tail = window(std::max<std::size_t>(1, horizon / 2), horizon, opt.tail_samples);
    const double slope = detail::trend_slope(horizon, opt.trend_levels, opt.tail_samples, window);
    r.max_tail = std::max(r.max_tail, tail);
    r.worst_slope = std::max(r.worst_slope, slope);
    if (!(tail == 0.0 || slope <= -opt.min_decay)) r.equivalent = false;
  }
  if (r.common_pairs == 0) throw NoCommonGoodPair();
  return r;
}

template <class Scalar>
struct AdjoinResult {
  FiniteSpace<Scalar> space;  // base points first, then adjoined points
  Report report;
  std::vector<std::string> adjoined;
};

/// Adjoins one point per Cauchy sequence that is neither equivalent to an
/// earlier sequence nor convergent to a base point. Distances to the new
/// point are the tail values at the horizon (or exact distances from a
/// closed-form limit); the tail oscillation must stay within opt.tau.
template <class P, class Scalar>
AdjoinResult<Scalar> adjoin_limits(const ProceduralSpace<P, Scalar>& sp, const std::vector<P>& base,
                                   const std::vector<SequenceHandle<P>>& seqs, const std::vector<P>& candidates,
                                   const SequenceOptions& opt = {}) {
  AdjoinResult<Scalar> out;
  Report& rep = out.report;
  rep.check = "adjoin";
  const FiniteSpace<Scalar> original = sp.restrict(base);
  const std::size_t n0 = base.size();

  struct NewPoint {
    const SequenceHandle<P>* seq;
    bool at_infinity;
    std::vector<ExtScalar<Scalar>> to_base;
  };
  std::vector<NewPoint> added;
  std::vector<const SequenceHandle<P>*> kept;

  for (const auto& s : seqs) {
    const auto verdict = classify(s, sp, candidates, opt);
    rep.count("cauchy");
    if (verdict.classification != Classification::bounded_cauchy &&
        verdict.classification != Classification::divergent) {
      rep.fail("cauchy", {s.label}, "sequence classified " + to_string(verdict.classification));
      continue;
    }
    bool duplicate = false;
    for (const auto* k : kept) {
      if (cauchy_equivalent(s, *k, sp, candidates, opt).equivalent) {
        duplicate = true;
        rep.values["duplicate:" + s.label] = k->label;
        break;
      }
    }
    if (duplicate) continue;
    kept.push_back(&s);

    const std::size_t lo = std::max<std::size_t>(1, s.horizon / 2), hi = s.horizon;
    const auto idx = tail_indices(lo, hi, opt.tail_samples);
    if (verdict.classification == Classification::divergent) {
      if (original.infinity()) {
        rep.values["converges:" + s.label] = original.label(*original.infinity());
        continue;
      }
      added.push_back({&s, true, {}});
      continue;
    }
    NewPoint np{&s, false, {}};
    std::optional<std::size_t> existing;
    for (std::size_t b = 0; b < n0; ++b) {
      double low = std::numeric_limits<double>::infinity(), high = 0.0;
      for (auto n : idx) {
        const double v = as_double(sp.dist(s(n), base[b]));
        low = std::min(low, v);
        high = std::max(high, v);
      }
      rep.count("tail-oscillation");
      if (high - low > opt.tau)
        throw NonConvergentTail("distance from " + s.label + " to " + original.label(b) + " oscillates by " +
                                std::to_string(high - low));
      const auto est = s.limit ? sp.dist(*s.limit, base[b]) : sp.dist(s(hi), base[b]);
      np.to_base.push_back(est);
      if (s.limit ? est.is_zero() : est.to_double() <= opt.tau) existing = b;
    }
    if (existing) {
      rep.values["converges:" + s.label] = original.label(*existing);
      continue;
    }
    added.push_back(std::move(np));
  }

  // Assemble the extended presentation.
  const std::size_t n = n0 + added.size();
  const auto N = static_cast<Eigen::Index>(n);
  DistanceMatrix<Scalar> f = DistanceMatrix<Scalar>::Zero(N, N);
  typename FiniteSpace<Scalar>::Mask mask = FiniteSpace<Scalar>::Mask::Constant(N, N, false);
  std::vector<std::string> labels = original.labels();
  std::optional<std::size_t> inf = original.infinity();
  auto put = [&](std::size_t i, std::size_t j, const ExtScalar<Scalar>& d) {
    const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
    mask(a, b) = mask(b, a) = d.is_infinite();
    f(a, b) = f(b, a) = d.is_infinite() ? Scalar(0) : d.value();
  };
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n0; ++j) put(i, j, original.dist(i, j));
  for (std::size_t k = 0; k < added.size(); ++k) {
    const auto& a = added[k];
    const std::size_t i = n0 + k;
    labels.push_back(a.seq->label);
    out.adjoined.push_back(a.seq->label);
    if (a.at_infinity) inf = i;
    for (std::size_t b = 0; b < n0; ++b) put(i, b, a.at_infinity ? ExtScalar<Scalar>::infinity() : a.to_base[b]);
    for (std::size_t l = 0; l < k; ++l) {
      const auto& c = added[l];
      ExtScalar<Scalar> d;
      if (a.at_infinity || c.at_infinity)
        d = ExtScalar<Scalar>::infinity();
      else if (a.seq->limit && c.seq->limit)
        d = sp.dist(*a.seq->limit, *c.seq->limit);
      else
        d = sp.dist((*a.seq)(a.seq->horizon), (*c.seq)(c.seq->horizon));
      put(i, n0 + l, d);
    }
  }
  out.space = FiniteSpace<Scalar>(std::move(labels), std::move(f), std::move(mask), inf);

  // The distance and cross ratios on the base points are unchanged.
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n0; ++j) {
      rep.count("base-distance");
      if (out.space.dist(i, j) != original.dist(i, j))
        rep.fail("base-distance", {original.label(i), original.label(j)}, "distance changed");
    }
  {
    ScanOptions so;
    so.seed = opt.seed;
    so.budget = 20000;
    const auto quads = scan_tuples<4>(n0, so, 7, [](const Quadruple&) { return true; });
    for (const auto& q : quads) {
      rep.count("base-crt");
      if (!near(classical_cross_ratio(out.space, q), classical_cross_ratio(original, q), opt.tol))
        rep.fail("base-crt", tuple_labels(original.labels(), q), "cross ratio changed");
    }
  }
  // Each new point is a limit of its sequence.
  for (std::size_t k = 0; k < added.size(); ++k) {
    const auto& a = added[k];
    const auto& s = *a.seq;
    const std::size_t lo = std::max<std::size_t>(1, s.horizon / 2), hi = s.horizon;
    rep.count("limit");
    double residual = 0.0;
    if (a.at_infinity) {
      double low = std::numeric_limits<double>::infinity();
      for (auto n : tail_indices(lo, hi, opt.tail_samples))
        for (const auto& b : base) low = std::min(low, as_double(sp.dist(s(n), b)));
      residual = low > 0 ? 1.0 / low : std::numeric_limits<double>::infinity();
    } else if (s.limit) {
      residual = as_double(sp.dist(s(hi), *s.limit));
    } else {
      for (auto n : tail_indices(lo, hi, opt.tail_samples)) residual = std::max(residual, as_double(sp.dist(s(n), s(hi))));
    }
    rep.values["limit-residual:" + s.label] = to_text(residual);
    if (residual > opt.tau) rep.fail("limit", {s.label}, "tail distance to the adjoined point is " + to_text(residual));
  }
  return out;
}

// Closed-form sequence families over a scalar point type.

template <class Scalar>
std::function<Scalar(std::size_t)> reciprocal_family(const Scalar& scale = Scalar(1), const Scalar& shift = Scalar(0)) {
  return [scale, shift](std::size_t n) { return Scalar(shift + scale / Scalar(static_cast<long>(n))); };
}

template <class Scalar>
std::function<Scalar(std::size_t)> alternating_reciprocal_family(const Scalar& scale = Scalar(1),
                                                                 const Scalar& shift = Scalar(0)) {
  return [scale, shift](std::size_t n) {
    const Scalar v = scale / Scalar(static_cast<long>(n));
    return n % 2 == 0 ? Scalar(shift + v) : Scalar(shift - v);
  };
}

template <class Scalar>
std::function<Scalar(std::size_t)> linear_family(const Scalar& slope = Scalar(1), const Scalar& offset = Scalar(0)) {
  return [slope, offset](std::size_t n) { return Scalar(offset + slope * Scalar(static_cast<long>(n))); };
}

template <class Scalar>
std::function<Scalar(std::size_t)> constant_family(const Scalar& c) {
  return [c](std::size_t) { return c; };
}

/// x_n = values[n-1], continued by the last value.
template <class T>
std::function<T(std::size_t)> table_family(std::vector<T> values) {
  if (values.empty()) throw std::invalid_argument("table_family: empty table");
  return [values = std::move(values)](std::size_t n) { return values[std::min(n, values.size()) - 1]; };
}

}  // namespace moebius

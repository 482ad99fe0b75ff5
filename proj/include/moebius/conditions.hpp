#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "moebius/scan.hpp"
#include "moebius/space.hpp"
#include "moebius/structure.hpp"

namespace moebius {

template <class Scalar>
struct ConditionReport {
  std::string kind;  // corner | symmetry | quasi | infinity-corner
  ExtScalar<Scalar> margin;
  std::optional<double> K_estimate;  // +inf when the margin is 0
  std::vector<Witness> witnesses;
  bool sampled = false;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::size_t examined = 0;
  std::string note;
};

inline nlohmann::json ext_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

template <class Scalar>
nlohmann::json to_json(const ConditionReport<Scalar>& r) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : r.witnesses) w.push_back({{"property", x.property}, {"tuple", x.tuple}, {"detail", x.detail}});
  nlohmann::json j = {{"kind", r.kind},
                      {"margin", ext_json(r.margin.to_double())},
                      {"margin_exact", to_text(r.margin)},
                      {"K_estimate", r.K_estimate ? ext_json(*r.K_estimate) : nlohmann::json(nullptr)},
                      {"witnesses", w},
                      {"examined", r.examined},
                      {"sampled", r.sampled}};
  if (r.sampled) {
    j["budget"] = r.budget;
    j["seed"] = r.seed;
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

/// Minimal K with d(x,z) <= K max(d(x,y), d(y,z)) over ordered triples of
/// distinct finite points, with a maximizing triple. 1 when there are fewer
/// than three finite points; inf when some denominator vanishes.
template <class Scalar>
ConditionReport<Scalar> quasi_report(const FiniteSpace<Scalar>& sp) {
  ConditionReport<Scalar> r;
  r.kind = "quasi";
  std::vector<std::size_t> pts;
  for (std::size_t i = 0; i < sp.size(); ++i)
    if (!sp.is_infinity(i)) pts.push_back(i);
  const auto& d = sp.finite_part();
  ExtScalar<Scalar> best(Scalar(1));
  std::optional<std::array<std::size_t, 3>> arg;
  // For fixed (x, z) the worst y minimizes max(d(x,y), d(y,z)).
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t c = a + 1; c < pts.size(); ++c) {
      const auto x = static_cast<Eigen::Index>(pts[a]), z = static_cast<Eigen::Index>(pts[c]);
      std::optional<Scalar> low;
      std::size_t low_y = 0;
      for (std::size_t b = 0; b < pts.size(); ++b) {
        if (b == a || b == c) continue;
        const auto y = static_cast<Eigen::Index>(pts[b]);
        const Scalar& m = d(x, y) < d(y, z) ? d(y, z) : d(x, y);
        if (!low || m < *low) {
          low = m;
          low_y = pts[b];
        }
        ++r.examined;
      }
      if (!low) continue;
      const ExtScalar<Scalar> ratio = *low == 0 ? ExtScalar<Scalar>::infinity() : ExtScalar<Scalar>(Scalar(d(x, z) / *low));
      if (best < ratio) {
        best = ratio;
        arg = {pts[a], low_y, pts[c]};
      }
    }
  r.margin = best.is_infinite() ? ExtScalar<Scalar>(Scalar(0)) : ext_inv(best);
  r.K_estimate = best.to_double();
  if (arg)
    r.witnesses.push_back({"quasi", tuple_labels(sp.labels(), *arg), "d(x,z) / max(d(x,y), d(y,z)) = " + to_text(best)});
  return r;
}

template <class Scalar>
ExtScalar<Scalar> quasi_constant(const FiniteSpace<Scalar>& sp) {
  const auto r = quasi_report(sp);
  return r.margin.is_zero() ? ExtScalar<Scalar>::infinity() : ext_inv(r.margin);
}

/// quasi_constant on a seeded sample of a procedural space.
template <class P, class Scalar>
ExtScalar<Scalar> quasi_constant(const ProceduralSpace<P, Scalar>& sp, std::size_t budget, std::uint64_t seed) {
  const auto pts = sp.sample(budget, seed);
  return quasi_constant(sp.restrict(pts));
}

/// For every non-degenerate quadruple, the second-largest over the largest
/// coordinate of crt: at the corner of the largest coordinate, rescaled so
/// that coordinate is 1, this is max(a, b). The margin is the minimum.
template <class Scalar>
ConditionReport<Scalar> corner_margin(const MoebiusStructure<Scalar>& m, const ScanOptions& opt = {}) {
  ConditionReport<Scalar> r;
  r.kind = "corner";
  r.margin = ExtScalar<Scalar>::infinity();
  const auto quads = scan_tuples<4>(m.size(), opt, 5, [](const Quadruple& q) { return is_nondegenerate(q); });
  std::optional<Quadruple> arg;
  for (const auto& q : quads) {
    const auto t = m.crt(q);
    Scalar top = t[0], second = t[1];
    if (second > top) std::swap(top, second);
    if (t[2] > top) {
      second = top;
      top = t[2];
    } else if (t[2] > second) {
      second = t[2];
    }
    const ExtScalar<Scalar> v(Scalar(second / top));
    ++r.examined;
    if (v < r.margin) {
      r.margin = v;
      arg = q;
    }
  }
  if (arg) r.witnesses.push_back({"corner", tuple_labels(m.labels(), *arg), "crt = " + to_text(m.crt(*arg))});
  if (r.margin.is_infinite()) {
    r.note = "no non-degenerate quadruple";
  } else {
    const double mg = r.margin.to_double();
    r.K_estimate = mg > 0 ? 1.0 / std::sqrt(mg) : std::numeric_limits<double>::infinity();
  }
  r.sampled = m.size() > opt.exhaustive_limit;
  if (r.sampled) {
    r.budget = opt.budget;
    r.seed = opt.seed;
  }
  return r;
}

/// With the point at infinity w: eps = min over distinct finite x, y, z of
/// max(a, b) / c for crt(w, x, y, z) = (a : b : c), where c is d(x, y).
/// The margin is eps and the estimate 1 / eps.
template <class Scalar>
ConditionReport<Scalar> infinity_corner_report(const FiniteSpace<Scalar>& sp) {
  if (!sp.infinity()) throw std::invalid_argument("infinity_corner_K: the space has no point at infinity");
  const std::size_t w = *sp.infinity();
  ConditionReport<Scalar> r;
  r.kind = "infinity-corner";
  r.margin = ExtScalar<Scalar>::infinity();
  std::optional<Quadruple> arg;
  const std::size_t n = sp.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const Quadruple q{w, x, y, z};
        if (x == w || y == w || z == w || !is_nondegenerate(q)) continue;
        const auto t = crt_of(sp, q);
        const Scalar& top = t[1] < t[0] ? t[0] : t[1];
        const ExtScalar<Scalar> v(Scalar(top / t[2]));
        ++r.examined;
        if (v < r.margin) {
          r.margin = v;
          arg = q;
        }
      }
  if (!arg) {
    r.margin = Scalar(1);
    r.K_estimate = 1.0;
    r.note = "fewer than three finite points";
    return r;
  }
  r.K_estimate = r.margin.is_zero() ? std::numeric_limits<double>::infinity() : ext_inv(r.margin).to_double();
  r.witnesses.push_back({"corner", tuple_labels(sp.labels(), *arg), "crt = " + to_text(crt_of(sp, *arg))});
  return r;
}

template <class Scalar>
ExtScalar<Scalar> infinity_corner_K(const FiniteSpace<Scalar>& sp) {
  const auto r = infinity_corner_report(sp);
  return r.margin.is_zero() ? ExtScalar<Scalar>::infinity() : ext_inv(r.margin);
}

/// Adjoins zeta with d(zeta, x) = d(x, zeta0) + 1, involutes at zeta and drops
/// zeta. The result has no point at infinity and the same Moebius structure.
template <class Scalar>
FiniteSpace<Scalar> boundedify(const FiniteSpace<Scalar>& sp, std::size_t zeta0) {
  if (!sp.infinity()) throw std::invalid_argument("boundedify: the space has no point at infinity");
  if (sp.is_infinity(zeta0)) throw std::invalid_argument("boundedify: zeta0 is the point at infinity");
  const std::size_t n = sp.size();
  const auto N = static_cast<Eigen::Index>(n);
  DistanceMatrix<Scalar> f = DistanceMatrix<Scalar>::Zero(N + 1, N + 1);
  typename FiniteSpace<Scalar>::Mask mask = FiniteSpace<Scalar>::Mask::Constant(N + 1, N + 1, false);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < N; ++j) {
      f(i, j) = sp.raw(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      mask(i, j) = sp.raw_infinite(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  for (Eigen::Index i = 0; i < N; ++i) {
    const auto d = sp.dist(static_cast<std::size_t>(i), zeta0);
    if (d.is_infinite()) {
      mask(i, N) = mask(N, i) = true;
    } else {
      f(i, N) = f(N, i) = Scalar(d.value() + Scalar(1));
    }
  }
  auto labels = sp.labels();
  labels.push_back("zeta");
  const FiniteSpace<Scalar> extended(std::move(labels), std::move(f), std::move(mask), sp.infinity());
  const auto inv = involute(extended, n);
  std::vector<std::size_t> keep(n);
  for (std::size_t i = 0; i < n; ++i) keep[i] = i;
  const auto r = inv.restrict(keep);
  // Every distance is now finite; rebuild without an infinity point.
  return FiniteSpace<Scalar>(r.labels(), r.finite_part());
}

/// Minimum over non-degenerate quadruples of the max-norm distance, within the
/// sum-one plane, from crt(q) to the boundary of the triangle minus its three
/// midpoints; that distance is the smallest coordinate. A finite scan is
/// empirical evidence for the condition on the closure of the image, not a proof.
template <class Scalar>
ConditionReport<Scalar> symmetry_margin(const MoebiusStructure<Scalar>& m, const ScanOptions& opt = {}) {
  ConditionReport<Scalar> r;
  r.kind = "symmetry";
  r.margin = ExtScalar<Scalar>::infinity();
  r.note = "empirical scan of finitely many quadruples";
  const auto quads = scan_tuples<4>(m.size(), opt, 6, [](const Quadruple& q) { return is_nondegenerate(q); });
  std::optional<Quadruple> arg;
  for (const auto& q : quads) {
    const auto t = m.crt(q);
    Scalar low = t[0];
    if (t[1] < low) low = t[1];
    if (t[2] < low) low = t[2];
    const ExtScalar<Scalar> v(low);
    ++r.examined;
    if (v < r.margin) {
      r.margin = v;
      arg = q;
    }
  }
  if (arg) r.witnesses.push_back({"symmetry", tuple_labels(m.labels(), *arg), "crt = " + to_text(m.crt(*arg))});
  r.sampled = m.size() > opt.exhaustive_limit;
  if (r.sampled) {
    r.budget = opt.budget;
    r.seed = opt.seed;
  }
  return r;
}

}  // namespace moebius

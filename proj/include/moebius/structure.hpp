#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "moebius/errors.hpp"
#include "moebius/extscalar.hpp"
#include "moebius/perms.hpp"
#include "moebius/report.hpp"
#include "moebius/scan.hpp"
#include "moebius/space.hpp"
#include "moebius/triples.hpp"

namespace moebius {

template <class T>
std::string to_text(const T& v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline void require_admissible(const Quadruple& q) {
  if (!is_admissible(q))
    throw InadmissibleQuadruple("(" + std::to_string(q[0]) + "," + std::to_string(q[1]) + "," + std::to_string(q[2]) +
                                "," + std::to_string(q[3]) + ")");
}

/// The three products d(w,x)d(y,z), d(w,y)d(x,z), d(w,z)d(x,y) as formal products.
template <class Scalar>
std::array<FormalProduct<Scalar>, 3> crt_products(const FiniteSpace<Scalar>& sp, const Quadruple& q) {
  require_admissible(q);
  const auto [w, x, y, z] = q;
  return {fp_mul(sp.dist(w, x), sp.dist(y, z)), fp_mul(sp.dist(w, y), sp.dist(x, z)),
          fp_mul(sp.dist(w, z), sp.dist(x, y))};
}

/// Cross-ratio triple (d(w,x)d(y,z) : d(w,y)d(x,z) : d(w,z)d(x,y)) in canonical form.
/// With the point at infinity w, this is (d(y,z) : d(x,z) : d(x,y)).
template <class Scalar>
ProjTriple<Scalar> crt_of(const FiniteSpace<Scalar>& sp, const Quadruple& q, Tolerance tol = {}) {
  return normalize_delta(crt_products(sp, q), tol);
}

/// F(crt(q)), computed through the canonical projective triple.
template <class Scalar>
RatioTriple<Scalar> ratio_of(const FiniteSpace<Scalar>& sp, const Quadruple& q, Tolerance tol = {}) {
  return F_forward(crt_of(sp, q, tol));
}

/// M_d(q) = Psi(F(crt(q))).
template <class Scalar>
LogTriple M_of(const FiniteSpace<Scalar>& sp, const Quadruple& q, Tolerance tol = {}) {
  return psi(ratio_of(sp, q, tol));
}

/// The same ratios computed directly from the three products without normalizing:
/// (d(w,y)d(x,z) / d(w,z)d(x,y), d(w,z)d(x,y) / d(w,x)d(y,z), d(w,x)d(y,z) / d(w,y)d(x,z)).
template <class Scalar>
RatioTriple<Scalar> classical_cross_ratio(const FiniteSpace<Scalar>& sp, const Quadruple& q) {
  const auto p = crt_products(sp, q);
  return {{fp_ratio(p[1], p[2]), fp_ratio(p[2], p[0]), fp_ratio(p[0], p[1])}};
}

/// M_d(q) expanded in Gromov products (x|y) = -ln d(x,y). Infinite distances
/// are tracked as a signed count of infinite logarithms, which must cancel.
/// Requires a non-degenerate quadruple.
template <class Scalar>
LogTriple gromov_expansion(const FiniteSpace<Scalar>& sp, const Quadruple& q) {
  if (!is_nondegenerate(q)) throw std::invalid_argument("gromov_expansion: degenerate quadruple");
  struct Term {
    double finite = 0.0;
    int infdeg = 0;  // multiples of -inf
  };
  auto gp = [&](std::size_t a, std::size_t b) {
    const auto d = sp.dist(a, b);
    if (d.is_infinite()) return Term{0.0, 1};
    return Term{-std::log(to_double(d.value())), 0};
  };
  auto comb = [](Term p, Term q2, Term r, Term s) {  // p + q2 - r - s
    const int deg = p.infdeg + q2.infdeg - r.infdeg - s.infdeg;
    if (deg > 0) return ExtLog::neg_inf();
    if (deg < 0) return ExtLog::pos_inf();
    return ExtLog(p.finite + q2.finite - r.finite - s.finite);
  };
  const auto [w, x, y, z] = q;
  const Term wx = gp(w, x), wy = gp(w, y), wz = gp(w, z), xy = gp(x, y), xz = gp(x, z), yz = gp(y, z);
  return {{comb(wz, xy, wy, xz), comb(wx, yz, wz, xy), comb(wy, xz, wx, yz)}};
}

enum class Provenance { induced, table };

/// A map from admissible quadruples to cross-ratio values, kept in ratio form
/// so that exact scalars decide all identities without logarithms.
template <class Scalar>
class MoebiusStructure {
public:
  using Evaluator = std::function<RatioTriple<Scalar>(const Quadruple&)>;

  MoebiusStructure(std::vector<std::string> labels, Evaluator eval, Provenance provenance, Tolerance tol = {})
      : labels_(std::move(labels)), eval_(std::move(eval)), provenance_(provenance), tol_(tol) {}

  /// The structure M_d induced by a distance.
  static MoebiusStructure induced(FiniteSpace<Scalar> sp, Tolerance tol = {}) {
    auto shared = std::make_shared<const FiniteSpace<Scalar>>(std::move(sp));
    MoebiusStructure m(shared->labels(), [shared](const Quadruple& q) { return classical_cross_ratio(*shared, q); },
                       Provenance::induced, tol);
    m.space_ = shared;
    return m;
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  Provenance provenance() const { return provenance_; }
  Tolerance tolerance() const { return tol_; }

  /// The inducing distance, for induced structures.
  const FiniteSpace<Scalar>* space() const { return space_.get(); }

  RatioTriple<Scalar> ratio(const Quadruple& q) const {
    require_admissible(q);
    for (auto i : q)
      if (i >= size()) throw std::out_of_range("MoebiusStructure: point index out of range");
    return eval_(q);
  }
  LogTriple evaluate(const Quadruple& q) const { return psi(ratio(q)); }
  ProjTriple<Scalar> crt(const Quadruple& q) const { return F_inverse(ratio(q), tol_); }

private:
  std::vector<std::string> labels_;
  Evaluator eval_;
  Provenance provenance_;
  Tolerance tol_;
  std::shared_ptr<const FiniteSpace<Scalar>> space_;
};

/// A table entry: the value of M on one quadruple.
struct TableEntry {
  Quadruple quad;
  LogTriple value;
};

/// A structure given by explicit values on orbit representatives. Other
/// quadruples are obtained through M(pi P) = sgn(pi) phi(pi) M(P). Entries
/// given for several members of one orbit are kept verbatim, so that
/// check_axioms can detect inconsistent tables.
/// With `fill_degenerate`, quadruples (x,x,y,z) without an explicit entry get (0, inf, -inf).
MoebiusStructure<double> table_structure(std::vector<std::string> labels, const std::vector<TableEntry>& entries,
                                         bool fill_degenerate = false, Tolerance tol = {});

/// M(a x w b) + M(a w y b) - M(a x y b) in ratio form: products and quotients of
/// the components. A component is empty when the extended sum is ill-posed.
template <class Scalar>
struct CocycleSum {
  std::array<std::optional<ExtScalar<Scalar>>, 3> e;
};

template <class Scalar>
CocycleSum<Scalar> cocycle_sum(const MoebiusStructure<Scalar>& m, std::size_t x, std::size_t y, std::size_t w,
                               std::size_t a, std::size_t b) {
  const auto r1 = m.ratio({a, x, w, b});
  const auto r2 = m.ratio({a, w, y, b});
  const auto r3 = m.ratio({a, x, y, b});
  CocycleSum<Scalar> s;
  for (int k = 0; k < 3; ++k) {
    const auto prod = checked_mul(r1[k], r2[k]);
    if (prod) s.e[static_cast<std::size_t>(k)] = checked_div(*prod, r3[k]);
  }
  return s;
}

/// exp(lambda(x, y, w, a, b)) from the first components when x != b and y != a,
/// otherwise from the reciprocal of the second components when x != a and y != b.
template <class Scalar>
ExtScalar<Scalar> lambda_ratio_of(const MoebiusStructure<Scalar>& m, std::size_t x, std::size_t y, std::size_t w,
                                  std::size_t a, std::size_t b) {
  if (a == w || w == b || a == b) throw std::invalid_argument("lambda_of: omega, alpha, beta must be distinct");
  const bool first = x != b && y != a;
  const bool second = x != a && y != b;
  if (!first && !second) throw std::invalid_argument("lambda_of: neither component is defined for this tuple");
  const auto s = cocycle_sum(m, x, y, w, a, b);
  std::optional<ExtScalar<Scalar>> from_first, from_second;
  if (first) {
    if (!s.e[0]) throw IndeterminateSum("first component of the cocycle sum");
    from_first = *s.e[0];
  }
  if (second) {
    if (!s.e[1]) throw IndeterminateSum("second component of the cocycle sum");
    from_second = ext_inv(*s.e[1]);
  }
  if (from_first && from_second && !near(*from_first, *from_second, m.tolerance()))
    throw BranchDisagreement("lambda branches disagree: " + to_text(*from_first) + " vs " + to_text(*from_second));
  return from_first ? *from_first : *from_second;
}

template <class Scalar>
ExtLog lambda_of(const MoebiusStructure<Scalar>& m, std::size_t x, std::size_t y, std::size_t w, std::size_t a,
                 std::size_t b) {
  return ext_ln(lambda_ratio_of(m, x, y, w, a, b));
}

/// Properties 1-4 of a Moebius structure, exhaustively for small domains and
/// by seeded sampling otherwise.
template <class Scalar>
Report check_axioms(const MoebiusStructure<Scalar>& m, const ScanOptions& opt = {}) {
  const std::size_t n = m.size();
  const Tolerance tol = opt.tol;
  const auto& labels = m.labels();
  const auto perms = Perm4::all();
  const ExtScalar<Scalar> one(Scalar(1));

  const auto quads = scan_tuples<4>(n, opt, 0, [](const Quadruple&) { return true; });
  Report r = parallel_scan(quads, opt.workers, opt.max_witnesses, [&](const Quadruple& q, Report& out) {
    const auto v = m.ratio(q);
    for (const auto& p : perms) {
      out.count("1");
      const auto lhs = m.ratio(permute(p, q));
      const auto rhs = act(p, v);
      if (!near(lhs, rhs, tol)) {
        auto t = tuple_labels(labels, q);
        t.push_back(p.cycles());
        out.fail("1", t, "M(pi P) = " + to_text(lhs) + " but sgn(pi) phi(pi) M(P) = " + to_text(rhs));
      }
    }
    out.count("2");
    const bool interior = v.is_finite() && !v[0].is_zero() && !v[1].is_zero() && !v[2].is_zero();
    if (interior != is_nondegenerate(q) || !is_valid(v, tol))
      out.fail("2", tuple_labels(labels, q), "M(P) = " + to_text(v));
    if (q[0] == q[1]) {
      out.count("3");
      const RatioTriple<Scalar> expected{{one, ExtScalar<Scalar>::infinity(), ExtScalar<Scalar>(Scalar(0))}};
      if (v != expected) out.fail("3", tuple_labels(labels, q), "M(x,x,y,z) = " + to_text(v));
    }
  });

  using Quintuple = std::array<std::size_t, 5>;
  // (x, y, omega, alpha, beta) with omega, alpha, beta distinct
  auto base_ok = [](const Quintuple& t) { return t[2] != t[3] && t[3] != t[4] && t[2] != t[4]; };
  const auto quints = scan_tuples<5>(n, opt, 1, base_ok);
  Report r4 = parallel_scan(quints, opt.workers, opt.max_witnesses, [&](const Quintuple& t, Report& out) {
    const auto [x, y, w, a, b] = t;
    const bool first = x != b && y != a;
    const bool second = x != a && y != b;
    if (!first && !second) return;
    const auto s = cocycle_sum(m, x, y, w, a, b);
    if (first) {
      out.count("4-first-defined");
      if (!s.e[0]) out.fail("4-first-defined", tuple_labels(labels, t), "first component is ill-posed");
    }
    if (second) {
      out.count("4-second-defined");
      if (!s.e[1]) out.fail("4-second-defined", tuple_labels(labels, t), "second component is ill-posed");
    }
    if (first && second) {
      out.count("4");
      std::string detail;
      if (!s.e[2] || !near(*s.e[2], one, tol))
        detail = "third component is not 0";
      else if (s.e[0] && s.e[1]) {
        // compare e0 with 1/e1 rather than e0*e1 == 1: lambda may be infinite (x == y)
        if (!near(*s.e[0], ext_inv(*s.e[1]), tol)) detail = "first two components are not (lambda, -lambda)";
      }
      if (!detail.empty()) out.fail("4", tuple_labels(labels, t), detail);
    }
  });
  r.merge(r4);
  r.check = "axioms";
  r.sampled = n > opt.exhaustive_limit;
  if (r.sampled) {
    r.budget = opt.budget;
    r.seed = opt.seed;
  }
  return r;
}

/// A = (omega, alpha, beta), pairwise distinct.
struct BaseTriple {
  std::size_t omega = 0;
  std::size_t alpha = 0;
  std::size_t beta = 0;

  bool is_nondegenerate() const { return omega != alpha && alpha != beta && omega != beta; }
  friend bool operator==(const BaseTriple&, const BaseTriple&) = default;
};

template <class Scalar>
struct DerivedSemiMetric {
  BaseTriple base;
  FiniteSpace<Scalar> space;  // omega is the point at infinity

  ExtScalar<Scalar> operator()(std::size_t x, std::size_t y) const { return space.dist(x, y); }
};

/// d_A(x, y) for x != y: exp of the first-component cocycle sum when x != beta and
/// y != alpha, exp of minus the second-component sum when x != alpha and y != beta.
template <class Scalar>
ExtScalar<Scalar> dA_value(const MoebiusStructure<Scalar>& m, const BaseTriple& A, std::size_t x, std::size_t y) {
  if (x == y) return Scalar(0);
  const auto [w, a, b] = A;
  const bool first = x != b && y != a;
  const bool second = x != a && y != b;
  std::optional<ExtScalar<Scalar>> va, vb;
  if (first) {
    const auto r1 = m.ratio({a, x, w, b}), r2 = m.ratio({a, w, y, b}), r3 = m.ratio({a, x, y, b});
    const auto p = checked_mul(r1[0], r2[0]);
    if (!p || !(va = checked_div(*p, r3[0]))) throw IndeterminateSum("d_A first branch");
  }
  if (second) {
    const auto r1 = m.ratio({a, x, y, b}), r2 = m.ratio({a, x, w, b}), r3 = m.ratio({a, w, y, b});
    const auto p = checked_mul(r2[1], r3[1]);
    if (!p || !(vb = checked_div(r1[1], *p))) throw IndeterminateSum("d_A second branch");
  }
  if (va && vb && !near(*va, *vb, m.tolerance())) throw BranchDisagreement("d_A branches disagree: " + to_text(*va) + " vs " + to_text(*vb));
  return va ? *va : *vb;
}

template <class Scalar>
DerivedSemiMetric<Scalar> derive_dA(const MoebiusStructure<Scalar>& m, const BaseTriple& A) {
  if (!A.is_nondegenerate()) throw std::invalid_argument("derive_dA: base triple must be non-degenerate");
  const std::size_t n = m.size();
  const auto N = static_cast<Eigen::Index>(n);
  DistanceMatrix<Scalar> f = DistanceMatrix<Scalar>::Zero(N, N);
  typename FiniteSpace<Scalar>::Mask mask = FiniteSpace<Scalar>::Mask::Constant(N, N, false);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto d = dA_value(m, A, x, y);
      const auto i = static_cast<Eigen::Index>(x), j = static_cast<Eigen::Index>(y);
      if (d.is_infinite())
        mask(i, j) = true;
      else
        f(i, j) = d.value();
    }
  return {A, FiniteSpace<Scalar>(m.labels(), std::move(f), std::move(mask), A.omega)};
}

/// d_o(x, y) = d(x, y) / (d(x, o) d(o, y)) with infinite distances cancelling;
/// o becomes the point at infinity.
template <class Scalar>
FiniteSpace<Scalar> involute(const FiniteSpace<Scalar>& sp, std::size_t o) {
  if (sp.is_infinity(o)) throw std::invalid_argument("involute: o is the point at infinity");
  const auto N = static_cast<Eigen::Index>(sp.size());
  DistanceMatrix<Scalar> f = DistanceMatrix<Scalar>::Zero(N, N);
  typename FiniteSpace<Scalar>::Mask mask = FiniteSpace<Scalar>::Mask::Constant(N, N, false);
  for (std::size_t x = 0; x < sp.size(); ++x)
    for (std::size_t y = 0; y < sp.size(); ++y) {
      if (x == y) continue;
      const auto d = fp_ratio(FormalProduct<Scalar>(sp.dist(x, y)), fp_mul(sp.dist(x, o), sp.dist(o, y)));
      const auto i = static_cast<Eigen::Index>(x), j = static_cast<Eigen::Index>(y);
      if (d.is_infinite())
        mask(i, j) = true;
      else
        f(i, j) = d.value();
    }
  return FiniteSpace<Scalar>(sp.labels(), std::move(f), std::move(mask), o);
}

/// Properties 1-5 of the derived semi-metrics for A = (omega, alpha, beta) and a fourth point b.
template <class Scalar>
Report verify_dA_theorem(const MoebiusStructure<Scalar>& m, const BaseTriple& A, std::size_t b,
                         const ScanOptions& opt = {}) {
  Report r;
  r.check = "verify-da";
  r.max_witnesses = opt.max_witnesses;
  const Tolerance tol = opt.tol;
  const auto& labels = m.labels();
  const std::size_t n = m.size();
  auto pair = [&](std::size_t x, std::size_t y) { return std::vector<std::string>{labels[x], labels[y]}; };

  DerivedSemiMetric<Scalar> dA;
  try {
    dA = derive_dA(m, A);
  } catch (const Error& e) {
    r.fail("1", {labels[A.omega], labels[A.alpha], labels[A.beta]}, std::string("d_A undefined: ") + e.what());
    return r;
  }

  // 1) semi-metric, 2) infinity at omega and d_A(alpha, beta) = 1
  for (const auto& v : validate(dA.space)) {
    const std::string prop = v.kind == "infinity-structure" ? "2" : "1";
    r.fail(prop, pair(v.i, v.j), v.message);
  }
  r.count("1", n * n);
  r.count("2", n + 1);
  if (dA(A.alpha, A.beta) != ExtScalar<Scalar>(Scalar(1)) &&
      !near(dA(A.alpha, A.beta), ExtScalar<Scalar>(Scalar(1)), tol))
    r.fail("2", pair(A.alpha, A.beta), "d_A(alpha, beta) = " + to_text(dA(A.alpha, A.beta)));

  // 3) d_(omega,beta,alpha) = d_A, and d_(beta,alpha,omega) is the involution of d_A at beta
  try {
    const auto dA1 = derive_dA(m, {A.omega, A.beta, A.alpha});
    const auto dA2 = derive_dA(m, {A.beta, A.alpha, A.omega});
    const auto inv = involute(dA.space, A.beta);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        r.count("3", 2);
        if (!near(dA1(x, y), dA(x, y), tol))
          r.fail("3", pair(x, y), "d_A' = " + to_text(dA1(x, y)) + " but d_A = " + to_text(dA(x, y)));
        if (!near(dA2(x, y), inv.dist(x, y), tol))
          r.fail("3", pair(x, y),
                 "d_A'' = " + to_text(dA2(x, y)) + " but d_A / (d_A(x,beta) d_A(beta,y)) = " + to_text(inv.dist(x, y)));
      }
  } catch (const Error& e) {
    r.fail("3", {labels[A.omega], labels[A.alpha], labels[A.beta]}, e.what());
  }

  // 4) d_(omega,alpha,beta) = lambda d_(omega,alpha,b)
  if (b == A.omega || b == A.alpha || b == A.beta) {
    r.fail("4", {labels[b]}, "b must differ from omega, alpha, beta");
  } else {
    try {
      const auto dB = derive_dA(m, {A.omega, A.alpha, b});
      std::optional<ExtScalar<Scalar>> lambda;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
          r.count("4");
          const auto u = dA(x, y), v = dB(x, y);
          if (u.is_infinite() || v.is_infinite()) {
            if (u.is_infinite() != v.is_infinite())
              r.fail("4", pair(x, y), "only one of the two distances is infinite");
            continue;
          }
          const auto q = checked_div(u, v);
          if (!q || q->is_zero() || q->is_infinite()) {
            r.fail("4", pair(x, y), "ratio " + to_text(u) + " / " + to_text(v) + " is not positive");
            continue;
          }
          if (!lambda)
            lambda = *q;
          else if (!near(*lambda, *q, tol))
            r.fail("4", pair(x, y), "ratio " + to_text(*q) + " differs from " + to_text(*lambda));
        }
      if (lambda) r.values["lambda"] = to_text(*lambda);
    } catch (const Error& e) {
      r.fail("4", {labels[A.omega], labels[A.alpha], labels[b]}, e.what());
    }
  }

  // 5) M_A = M
  const auto MA = MoebiusStructure<Scalar>::induced(dA.space, tol);
  const auto quads = scan_tuples<4>(n, opt, 2, [](const Quadruple&) { return true; });
  Report r5 = parallel_scan(quads, opt.workers, opt.max_witnesses, [&](const Quadruple& q, Report& out) {
    out.count("5");
    const auto lhs = MA.ratio(q), rhs = m.ratio(q);
    if (!near(lhs, rhs, tol))
      out.fail("5", tuple_labels(labels, q), "M_A = " + to_text(lhs) + " but M = " + to_text(rhs));
  });
  r.merge(r5);
  r.sampled = n > opt.exhaustive_limit;
  if (r.sampled) {
    r.budget = opt.budget;
    r.seed = opt.seed;
  }
  return r;
}

/// Checks M(wxyz) = M'(f(w)f(x)f(y)f(z)) and d_A(x,y) = d_f(A)(f(x),f(y)).
/// `f[i]` is the image of point i of m in m2.
template <class Scalar>
Report check_equivalence(const MoebiusStructure<Scalar>& m, const MoebiusStructure<Scalar>& m2,
                         const std::vector<std::size_t>& f, const ScanOptions& opt = {}) {
  Report r;
  r.check = "equivalence";
  r.max_witnesses = opt.max_witnesses;
  const std::size_t n = m.size();
  const auto& labels = m.labels();
  {
    std::vector<bool> hit(m2.size(), false);
    bool bijective = f.size() == n && m2.size() == n;
    for (auto v : f) {
      if (v >= m2.size() || hit[v]) bijective = false;
      if (v < m2.size()) hit[v] = true;
    }
    r.count("bijection");
    if (!bijective) {
      r.fail("bijection", {}, "f is not a bijection between the domains");
      return r;
    }
  }
  auto image = [&](const Quadruple& q) { return Quadruple{f[q[0]], f[q[1]], f[q[2]], f[q[3]]}; };
  const Tolerance tol = opt.tol;

  const auto quads = scan_tuples<4>(n, opt, 3, [](const Quadruple&) { return true; });
  Report rq = parallel_scan(quads, opt.workers, opt.max_witnesses, [&](const Quadruple& q, Report& out) {
    out.count("moebius");
    const auto lhs = m.ratio(q), rhs = m2.ratio(image(q));
    if (!near(lhs, rhs, tol))
      out.fail("moebius", tuple_labels(labels, q), "M = " + to_text(lhs) + " but M'(f) = " + to_text(rhs));
  });
  r.merge(rq);

  using Triple = std::array<std::size_t, 3>;
  const auto triples = scan_tuples<3>(n, opt, 4, [](const Triple& t) { return is_nondegenerate(t); });
  Report rd = parallel_scan(triples, opt.workers, opt.max_witnesses, [&](const Triple& t, Report& out) {
    const BaseTriple A{t[0], t[1], t[2]};
    const BaseTriple fA{f[t[0]], f[t[1]], f[t[2]]};
    try {
      const auto d1 = derive_dA(m, A);
      const auto d2 = derive_dA(m2, fA);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          out.count("derived-metric");
          if (!near(d1(x, y), d2(f[x], f[y]), tol))
            out.fail("derived-metric", {labels[t[0]], labels[t[1]], labels[t[2]], labels[x], labels[y]},
                     "d_A = " + to_text(d1(x, y)) + " but d_f(A) = " + to_text(d2(f[x], f[y])));
        }
    } catch (const Error& e) {
      out.count("derived-metric");
      out.fail("derived-metric", tuple_labels(labels, t), e.what());
    }
  });
  r.merge(rd);
  r.sampled = n > opt.exhaustive_limit;
  if (r.sampled) {
    r.budget = opt.budget;
    r.seed = opt.seed;
  }
  return r;
}

/// Points at distance < radius from center.
template <class Scalar>
std::vector<std::size_t> ball(const FiniteSpace<Scalar>& sp, std::size_t center, const Scalar& radius) {
  std::vector<std::size_t> out;
  const ExtScalar<Scalar> r(radius);
  for (std::size_t x = 0; x < sp.size(); ++x)
    if (sp.dist(center, x) < r) out.push_back(x);
  return out;
}

/// The largest r such that the balls of radius r around x and y share no sampled point.
template <class Scalar>
ExtScalar<Scalar> separation_radius(const FiniteSpace<Scalar>& sp, std::size_t x, std::size_t y) {
  ExtScalar<Scalar> best = ExtScalar<Scalar>::infinity();
  for (std::size_t z = 0; z < sp.size(); ++z) best = std::min(best, std::max(sp.dist(x, z), sp.dist(y, z)));
  return best;
}

}  // namespace moebius

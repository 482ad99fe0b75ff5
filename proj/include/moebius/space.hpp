#pragma once

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "moebius/extscalar.hpp"

namespace moebius {

using Quadruple = std::array<std::size_t, 4>;

/// No point occurs three or more times.
template <std::size_t K>
bool is_admissible(const std::array<std::size_t, K>& t) {
  for (std::size_t i = 0; i < K; ++i) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < K; ++j) count += t[j] == t[i];
    if (count > 2) return false;
  }
  return true;
}

/// All entries pairwise different.
template <std::size_t K>
bool is_nondegenerate(const std::array<std::size_t, K>& t) {
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = i + 1; j < K; ++j)
      if (t[i] == t[j]) return false;
  return true;
}

/// Visits every admissible K-tuple over {0..n-1} in lexicographic order.
template <std::size_t K, class Visitor>
void for_each_admissible(std::size_t n, Visitor&& visit) {
  if (n == 0) return;
  std::array<std::size_t, K> t{};
  while (true) {
    if (is_admissible(t)) visit(std::as_const(t));
    std::size_t k = K;
    while (k > 0) {
      --k;
      if (++t[k] < n) break;
      t[k] = 0;
      if (k == 0) return;
    }
  }
}

inline std::vector<Quadruple> admissible_quadruples(std::size_t n) {
  std::vector<Quadruple> out;
  for_each_admissible<4>(n, [&](const Quadruple& q) { out.push_back(q); });
  return out;
}

/// A finite set of labelled points with a symmetric distance into [0, inf] and
/// at most one point at infinity. Finite values live in an Eigen matrix; a
/// boolean mask marks infinite entries.
template <class Scalar>
class FiniteSpace {
public:
  using Point = std::size_t;
  using Mask = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

  FiniteSpace() = default;

  /// Distances from and to `infinity` are infinite; the matrix row/column of
  /// the infinity point is ignored.
  FiniteSpace(std::vector<std::string> labels, DistanceMatrix<Scalar> finite,
              std::optional<std::size_t> infinity = std::nullopt)
      : labels_(std::move(labels)), finite_(std::move(finite)), infinity_(infinity) {
    check_shape();
    inf_mask_ = Mask::Constant(finite_.rows(), finite_.cols(), false);
    if (infinity_) {
      for (Eigen::Index i = 0; i < finite_.rows(); ++i) {
        const auto w = static_cast<Eigen::Index>(*infinity_);
        if (i == w) continue;
        inf_mask_(i, w) = inf_mask_(w, i) = true;
        finite_(i, w) = finite_(w, i) = Scalar(0);
      }
    }
  }

  /// Raw constructor used by loaders: the mask is taken as given so that
  /// validate() can report inconsistent infinity structure.
  FiniteSpace(std::vector<std::string> labels, DistanceMatrix<Scalar> finite, Mask inf_mask,
              std::optional<std::size_t> infinity)
      : labels_(std::move(labels)), finite_(std::move(finite)), inf_mask_(std::move(inf_mask)), infinity_(infinity) {
    check_shape();
    if (inf_mask_.rows() != finite_.rows() || inf_mask_.cols() != finite_.cols())
      throw std::invalid_argument("FiniteSpace: mask shape mismatch");
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> infinity() const { return infinity_; }
  bool is_infinity(std::size_t i) const { return infinity_ && *infinity_ == i; }

  std::optional<std::size_t> index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  ExtScalar<Scalar> dist(std::size_t i, std::size_t j) const {
    const auto r = static_cast<Eigen::Index>(i), c = static_cast<Eigen::Index>(j);
    if (inf_mask_(r, c)) return ExtScalar<Scalar>::infinity();
    return ExtScalar<Scalar>(finite_(r, c));
  }

  /// Stored finite entry without the infinity mask or sign checks (validation use).
  const Scalar& raw(std::size_t i, std::size_t j) const {
    return finite_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  bool raw_infinite(std::size_t i, std::size_t j) const {
    return inf_mask_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  const DistanceMatrix<Scalar>& finite_part() const { return finite_; }

  /// The subspace on the given points, in the given order.
  FiniteSpace restrict(std::span<const std::size_t> keep) const {
    const auto m = static_cast<Eigen::Index>(keep.size());
    DistanceMatrix<Scalar> f(m, m);
    Mask mask(m, m);
    std::vector<std::string> labels;
    std::optional<std::size_t> inf;
    for (Eigen::Index a = 0; a < m; ++a) {
      const auto i = keep[static_cast<std::size_t>(a)];
      labels.push_back(labels_.at(i));
      if (is_infinity(i)) inf = static_cast<std::size_t>(a);
      for (Eigen::Index b = 0; b < m; ++b) {
        const auto j = keep[static_cast<std::size_t>(b)];
        f(a, b) = raw(i, j);
        mask(a, b) = raw_infinite(i, j);
      }
    }
    return FiniteSpace(std::move(labels), std::move(f), std::move(mask), inf);
  }

  /// Adjoins a new point at infinity; requires that none exists yet.
  FiniteSpace with_infinity_point(const std::string& label = "inf") const {
    if (infinity_) throw std::invalid_argument("FiniteSpace: already has a point at infinity");
    const auto n = static_cast<Eigen::Index>(size());
    DistanceMatrix<Scalar> f = DistanceMatrix<Scalar>::Zero(n + 1, n + 1);
    f.topLeftCorner(n, n) = finite_;
    auto labels = labels_;
    labels.push_back(label);
    return FiniteSpace(std::move(labels), std::move(f), size());
  }

  template <class To>
  FiniteSpace<To> cast() const {
    const auto n = finite_.rows();
    DistanceMatrix<To> f(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        if constexpr (std::is_same_v<To, double>)
          f(i, j) = to_double(finite_(i, j));
        else
          f(i, j) = To(finite_(i, j));
      }
    return FiniteSpace<To>(labels_, std::move(f), inf_mask_, infinity_);
  }

private:
  void check_shape() const {
    const auto n = static_cast<Eigen::Index>(labels_.size());
    if (finite_.rows() != n || finite_.cols() != n)
      throw std::invalid_argument("FiniteSpace: matrix is not " + std::to_string(n) + "x" + std::to_string(n));
    if (infinity_ && *infinity_ >= labels_.size()) throw std::invalid_argument("FiniteSpace: infinity index out of range");
  }

  std::vector<std::string> labels_;
  DistanceMatrix<Scalar> finite_;
  Mask inf_mask_;
  std::optional<std::size_t> infinity_;
};

/// A space whose points are produced on demand; distances come from a pure callback.
template <class P, class Scalar>
class ProceduralSpace {
public:
  using Point = P;
  using Distance = std::function<ExtScalar<Scalar>(const P&, const P&)>;
  using Sampler = std::function<P(std::mt19937_64&)>;
  using Label = std::function<std::string(const P&)>;

  ProceduralSpace(std::string name, Distance dist, Sampler sampler, Label label,
                  std::optional<P> infinity = std::nullopt)
      : name_(std::move(name)),
        dist_(std::move(dist)),
        sampler_(std::move(sampler)),
        label_(std::move(label)),
        infinity_(std::move(infinity)) {}

  const std::string& name() const { return name_; }
  ExtScalar<Scalar> dist(const P& a, const P& b) const { return dist_(a, b); }
  bool is_infinity(const P& p) const { return infinity_ && *infinity_ == p; }
  const std::optional<P>& infinity() const { return infinity_; }
  std::string label(const P& p) const { return label_(p); }

  /// `count` points drawn with a fixed seed.
  std::vector<P> sample(std::size_t count, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::vector<P> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sampler_(rng));
    return out;
  }

  /// The finite subspace on the given points.
  FiniteSpace<Scalar> restrict(std::span<const P> points) const {
    const auto n = static_cast<Eigen::Index>(points.size());
    DistanceMatrix<Scalar> f = DistanceMatrix<Scalar>::Zero(n, n);
    typename FiniteSpace<Scalar>::Mask mask = FiniteSpace<Scalar>::Mask::Constant(n, n, false);
    std::vector<std::string> labels;
    std::optional<std::size_t> inf;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& p = points[static_cast<std::size_t>(i)];
      labels.push_back(label(p));
      if (is_infinity(p)) inf = static_cast<std::size_t>(i);
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto d = dist(p, points[static_cast<std::size_t>(j)]);
        mask(i, j) = d.is_infinite();
        if (d.is_finite()) f(i, j) = d.value();
      }
    }
    return FiniteSpace<Scalar>(std::move(labels), std::move(f), std::move(mask), inf);
  }

private:
  std::string name_;
  Distance dist_;
  Sampler sampler_;
  Label label_;
  std::optional<P> infinity_;
};

/// Anything that answers distance queries between its points.
template <class S>
concept DistanceDomain = requires(const S& s, const typename S::Point& p) {
  { s.dist(p, p) };
  { s.is_infinity(p) } -> std::convertible_to<bool>;
};

struct SpaceViolation {
  std::string kind;  // asymmetry | nonzero-diagonal | negative | degenerate | infinity-structure
  std::size_t i = 0;
  std::size_t j = 0;
  std::string message;
};

/// Symmetry, zero diagonal, non-negativity, non-degeneracy and single-infinity
/// structure. An empty result means the presentation is valid.
template <class Scalar>
std::vector<SpaceViolation> validate(const FiniteSpace<Scalar>& sp) {
  std::vector<SpaceViolation> out;
  const std::size_t n = sp.size();
  auto lbl = [&](std::size_t i, std::size_t j) { return "(" + sp.label(i) + ", " + sp.label(j) + ")"; };
  for (std::size_t i = 0; i < n; ++i) {
    if (sp.raw_infinite(i, i) || sp.raw(i, i) != 0)
      out.push_back({"nonzero-diagonal", i, i, "d" + lbl(i, i) + " is not 0"});
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool inf_ij = sp.raw_infinite(i, j);
      if (j > i && (inf_ij != sp.raw_infinite(j, i) || (!inf_ij && sp.raw(i, j) != sp.raw(j, i))))
        out.push_back({"asymmetry", i, j, "d" + lbl(i, j) + " != d" + lbl(j, i)});
      if (!inf_ij && sp.raw(i, j) < 0) out.push_back({"negative", i, j, "d" + lbl(i, j) + " < 0"});
      if (j > i && !inf_ij && sp.raw(i, j) == 0)
        out.push_back({"degenerate", i, j, "d" + lbl(i, j) + " = 0 for distinct points"});
      const bool expect_inf = sp.is_infinity(i) != sp.is_infinity(j);
      if (inf_ij != expect_inf)
        out.push_back({"infinity-structure", i, j,
                       "d" + lbl(i, j) + (inf_ij ? " is infinite but neither point is the point at infinity"
                                                 : " must be infinite")});
    }
  }
  return out;
}

}  // namespace moebius

#pragma once

#include <array>
#include <compare>
#include <type_traits>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "moebius/triples.hpp"

namespace moebius {

// Composition conventions. A permutation stores its images 0-based; cycle
// strings and one-line notation are 1-based.
struct RightToLeft {};  // (p * q)(i) = p(q(i))
struct LeftToRight {};  // (p * q)(i) = q(p(i))

template <std::size_t N, class Composition>
class Permutation {
public:
  Permutation() {
    for (std::size_t i = 0; i < N; ++i) img_[i] = static_cast<int>(i);
  }

  /// One-line notation, 1-based: {2, 1, 3, 4} is the transposition (12).
  static Permutation from_one_line(const std::array<int, N>& one_line);

  /// Cycle notation such as "(12)(34)", "(1324)" or "1" for the identity.
  static Permutation parse(const std::string& cycles);

  static std::vector<Permutation> all();

  int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }

  Permutation inverse() const {
    Permutation r;
    for (std::size_t i = 0; i < N; ++i) r.img_[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
    return r;
  }

  int sign() const;
  bool is_identity() const { return *this == Permutation(); }

  std::array<int, N> one_line() const {
    std::array<int, N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = img_[i] + 1;
    return r;
  }

  /// Canonical cycle notation: cycles start at their smallest element, "1" for the identity.
  std::string cycles() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    Permutation r;
    for (std::size_t i = 0; i < N; ++i) {
      if constexpr (std::is_same_v<Composition, RightToLeft>)
        r.img_[i] = p.img_[static_cast<std::size_t>(q.img_[i])];
      else
        r.img_[i] = q.img_[static_cast<std::size_t>(p.img_[i])];
    }
    return r;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << p.cycles(); }

private:
  std::array<int, N> img_{};
};

/// Permutations of the four slots of a quadruple, composed as functions.
using Perm4 = Permutation<4, RightToLeft>;

/// Permutations of the three components of a triple. A Perm3 t acts on a
/// triple by pulling components, (t . v)_j = v_{t(j)}; the product is chosen
/// so that this is a left action: (s * t) . v = s . (t . v).
using Perm3 = Permutation<3, LeftToRight>;

/// The induced permutation of the opposite-edge constellations
/// (12)(34), (13)(42), (14)(23), in the pull convention of Perm3:
/// component j of the image receives the constellation that p carries onto
/// constellation j. Reproduces the published evaluation table and is a
/// homomorphism S4 -> S3.
Perm3 phi_map(const Perm4& p);

/// Moves the entry in slot i to slot p(i).
template <class T>
std::array<T, 4> permute(const Perm4& p, const std::array<T, 4>& quad) {
  std::array<T, 4> r = quad;
  for (int i = 0; i < 4; ++i) r[static_cast<std::size_t>(p(i))] = quad[static_cast<std::size_t>(i)];
  return r;
}

/// sgn(p) * phi(p) applied to a LogTriple.
LogTriple act(const Perm4& p, const LogTriple& t);

/// The same action in multiplicative coordinates, where the sign becomes a reciprocal.
template <class Scalar>
RatioTriple<Scalar> act(const Perm4& p, const RatioTriple<Scalar>& t) {
  const Perm3 tau = phi_map(p);
  RatioTriple<Scalar> r;
  for (int j = 0; j < 3; ++j) r[j] = t[tau(j)];
  return p.sign() < 0 ? reciprocal(r) : r;
}

}  // namespace moebius

#include "moebius/perms.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace moebius {

template <std::size_t N, class C>
Permutation<N, C> Permutation<N, C>::from_one_line(const std::array<int, N>& one_line) {
  Permutation r;
  std::array<bool, N> seen{};
  for (std::size_t i = 0; i < N; ++i) {
    const int v = one_line[i];
    if (v < 1 || v > static_cast<int>(N) || seen[static_cast<std::size_t>(v - 1)])
      throw std::invalid_argument("permutation: not a bijection");
    seen[static_cast<std::size_t>(v - 1)] = true;
    r.img_[i] = v - 1;
  }
  return r;
}

template <std::size_t N, class C>
Permutation<N, C> Permutation<N, C>::parse(const std::string& text) {
  Permutation r;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  if (text.substr(pos) == "1" || text.substr(pos) == "()" || pos == text.size()) return r;
  std::array<bool, N> used{};
  while (true) {
    skip_space();
    if (pos == text.size()) break;
    if (text[pos] != '(') throw std::invalid_argument("permutation: expected '(' in \"" + text + "\"");
    ++pos;
    std::vector<int> cycle;
    while (pos < text.size() && text[pos] != ')') {
      if (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',') {
        ++pos;
        continue;
      }
      const int v = text[pos] - '0';
      if (v < 1 || v > static_cast<int>(N) || used[static_cast<std::size_t>(v - 1)])
        throw std::invalid_argument("permutation: bad cycle \"" + text + "\"");
      used[static_cast<std::size_t>(v - 1)] = true;
      cycle.push_back(v - 1);
      ++pos;
    }
    if (pos == text.size()) throw std::invalid_argument("permutation: unterminated cycle");
    ++pos;
    for (std::size_t k = 0; k < cycle.size(); ++k)
      r.img_[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
  }
  return r;
}

template <std::size_t N, class C>
std::vector<Permutation<N, C>> Permutation<N, C>::all() {
  std::array<int, N> line{};
  std::iota(line.begin(), line.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(from_one_line(line));
  } while (std::next_permutation(line.begin(), line.end()));
  return out;
}

template <std::size_t N, class C>
int Permutation<N, C>::sign() const {
  int s = 1;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (img_[i] > img_[j]) s = -s;
  return s;
}

template <std::size_t N, class C>
std::string Permutation<N, C>::cycles() const {
  std::string out;
  std::array<bool, N> seen{};
  for (std::size_t i = 0; i < N; ++i) {
    if (seen[i] || img_[i] == static_cast<int>(i)) continue;
    out += '(';
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      out += static_cast<char>('1' + j);
      j = static_cast<std::size_t>(img_[j]);
    }
    out += ')';
  }
  return out.empty() ? "1" : out;
}

template class Permutation<4, RightToLeft>;
template class Permutation<3, LeftToRight>;

namespace {

using Edge = std::pair<int, int>;
using Constellation = std::pair<Edge, Edge>;

Edge sorted(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

Constellation canonical(Edge e, Edge f) {
  e = sorted(e.first, e.second);
  f = sorted(f.first, f.second);
  return e < f ? Constellation{e, f} : Constellation{f, e};
}

// (12)(34), (13)(42), (14)(23), 0-based.
const std::array<Constellation, 3>& constellations() {
  static const std::array<Constellation, 3> c = {
      canonical({0, 1}, {2, 3}), canonical({0, 2}, {3, 1}), canonical({0, 3}, {1, 2})};
  return c;
}

Constellation image(const Perm4& p, const Constellation& c) {
  return canonical({p(c.first.first), p(c.first.second)}, {p(c.second.first), p(c.second.second)});
}

int index_of(const Constellation& c) {
  const auto& all = constellations();
  return static_cast<int>(std::find(all.begin(), all.end(), c) - all.begin());
}

}  // namespace

Perm3 phi_map(const Perm4& p) {
  const Perm4 inv = p.inverse();
  std::array<int, 3> line{};
  for (std::size_t j = 0; j < 3; ++j) line[j] = index_of(image(inv, constellations()[j])) + 1;
  return Perm3::from_one_line(line);
}

LogTriple act(const Perm4& p, const LogTriple& t) {
  const Perm3 tau = phi_map(p);
  LogTriple r;
  for (int j = 0; j < 3; ++j) r[j] = t[tau(j)];
  return p.sign() < 0 ? -r : r;
}

}  // namespace moebius

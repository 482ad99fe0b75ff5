#include "moebius/structure.hpp"

#include <map>
#include <memory>

namespace moebius {

MoebiusStructure<double> table_structure(std::vector<std::string> labels, const std::vector<TableEntry>& entries,
                                         bool fill_degenerate, Tolerance tol) {
  const std::size_t n = labels.size();
  auto table = std::make_shared<std::map<Quadruple, RatioTriple<double>>>();
  for (const auto& e : entries) {
    require_admissible(e.quad);
    for (auto i : e.quad)
      if (i >= n) throw std::out_of_range("table_structure: point index out of range");
    if (!is_valid(e.value, tol)) throw std::invalid_argument("table_structure: entry is not a valid log triple");
    table->emplace(e.quad, phi(e.value));
  }
  if (fill_degenerate) {
    const RatioTriple<double> boundary{{1.0, ExtScalar<double>::infinity(), 0.0}};
    for_each_admissible<4>(n, [&](const Quadruple& q) {
      if (q[0] == q[1]) table->emplace(q, boundary);
    });
  }
  // Orbit lookup: the first stored quadruple P with q = pi P, in permutation order.
  auto eval = [table, perms = Perm4::all()](const Quadruple& q) -> RatioTriple<double> {
    if (auto it = table->find(q); it != table->end()) return it->second;
    for (const auto& p : perms) {
      const Quadruple source = permute(p.inverse(), q);
      if (auto it = table->find(source); it != table->end()) return act(p, it->second);
    }
    throw std::out_of_range("table_structure: no entry in the orbit of the quadruple");
  };
  return MoebiusStructure<double>(std::move(labels), eval, Provenance::table, tol);
}

}  // namespace moebius

#include "malle/finite_group.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "malle/error.hpp"

namespace malle {

Subgroup generate(const CayleyTable& table, std::span<const std::uint32_t> generators) {
  Subgroup sub;
  sub.elements.resize(table.order);
  sub.elements.set(table.identity);
  std::vector<std::uint32_t> frontier{table.identity};
  for (auto g : generators) {
    if (!sub.elements.test(g)) sub.generators.push_back(g);
  }
  // Right multiplication by generators reaches the whole subgroup in a
  // finite group (inverses are positive powers).
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (auto g : generators) {
      auto next = table.product(frontier[i], g);
      if (!sub.elements.test(next)) {
        sub.elements.set(next);
        frontier.push_back(next);
      }
    }
  }
  return sub;
}

std::vector<Subgroup> enumerate_subgroups(const CayleyTable& table) {
  if (table.order > kSubgroupEnumerationCap) {
    throw CapExceeded("subgroup enumeration limited to groups of order <= " +
                      std::to_string(kSubgroupEnumerationCap) + ", got " + std::to_string(table.order));
  }
  std::vector<Subgroup> found;
  std::set<ElementSet> seen;

  std::vector<std::uint32_t> none;
  found.push_back(generate(table, none));
  seen.insert(found.front().elements);

  // Every subgroup is reached by adjoining one element at a time.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::uint32_t g = 0; g < table.order; ++g) {
      if (found[i].elements.test(g)) continue;
      std::vector<std::uint32_t> gens = found[i].generators;
      gens.push_back(g);
      Subgroup next = generate(table, gens);
      if (seen.insert(next.elements).second) found.push_back(std::move(next));
    }
  }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return found;
}

}  // namespace malle

#include "malle/perm_group.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "malle/error.hpp"

namespace malle {

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators, std::size_t closure_cap)
    : degree_(degree) {
  if (degree == 0) throw ValidationError("permutation group of degree 0");
  for (auto& g : generators) {
    if (g.degree() != degree) throw ValidationError("generator degree does not match group degree");
    if (!g.is_identity()) generators_.push_back(std::move(g));
  }

  std::vector<Permutation> frontier{Permutation::identity(degree)};
  index_.emplace(frontier.front(), 0);
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (const auto& g : generators_) {
      Permutation next = frontier[i] * g;
      if (index_.contains(next)) continue;
      if (frontier.size() >= closure_cap) {
        throw CapExceeded("group closure exceeds cap of " + std::to_string(closure_cap) + " elements");
      }
      index_.emplace(next, frontier.size());
      frontier.push_back(std::move(next));
    }
  }
  std::sort(frontier.begin(), frontier.end());
  elements_ = std::move(frontier);
  for (std::size_t i = 0; i < elements_.size(); ++i) index_[elements_[i]] = i;
}

std::optional<std::size_t> PermGroup::index_of(const Permutation& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool PermGroup::is_abelian() const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    for (std::size_t j = i + 1; j < generators_.size(); ++j) {
      if (generators_[i] * generators_[j] != generators_[j] * generators_[i]) return false;
    }
  }
  return true;
}

bool PermGroup::is_transitive() const {
  std::vector<bool> reached(degree_, false);
  std::vector<std::uint32_t> queue{0};
  reached[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& g : generators_) {
      auto next = g(queue[i]);
      if (!reached[next]) {
        reached[next] = true;
        queue.push_back(next);
      }
    }
  }
  return queue.size() == degree_;
}

void PermGroup::require_transitive() const {
  if (!is_transitive()) throw ValidationError("group is not transitive on {1.." + std::to_string(degree_) + "}");
}

std::uint64_t PermGroup::exponent() const {
  std::uint64_t e = 1;
  for (const auto& g : elements_) e = std::lcm(e, g.order());
  return e;
}

bool PermGroup::is_normalized_by(const Permutation& g) const {
  for (const auto& h : generators_) {
    if (!contains(conjugate(g, h))) return false;
  }
  return true;
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  if (other.degree() != degree_) return false;
  return std::all_of(generators_.begin(), generators_.end(), [&](const auto& g) { return other.contains(g); });
}

bool PermGroup::is_normal_in(const PermGroup& other) const {
  if (!is_subgroup_of(other)) return false;
  return std::all_of(other.generators().begin(), other.generators().end(),
                     [&](const auto& g) { return is_normalized_by(g); });
}

CayleyTable PermGroup::cayley_table() const {
  const std::size_t n = elements_.size();
  if (n > 4 * kSubgroupEnumerationCap) {
    throw CapExceeded("Cayley table requested for a group of order " + std::to_string(n));
  }
  CayleyTable table;
  table.order = n;
  table.identity = static_cast<std::uint32_t>(index_.at(identity()));
  table.mul.resize(n * n);
  table.inv.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    table.inv[a] = static_cast<std::uint32_t>(index_.at(elements_[a].inverse()));
    for (std::size_t b = 0; b < n; ++b) {
      table.mul[a * n + b] = static_cast<std::uint32_t>(index_.at(elements_[a] * elements_[b]));
    }
  }
  return table;
}

PermGroup PermGroup::subgroup(const ElementSet& members) const {
  // Greedy generating set: adjoin members not yet in the running closure.
  std::vector<Permutation> gens;
  PermGroup current = trivial(degree_);
  for (std::size_t i = members.find_first(); i != ElementSet::npos; i = members.find_next(i)) {
    if (current.contains(elements_[i])) continue;
    gens.push_back(elements_[i]);
    current = PermGroup(degree_, gens);
  }
  if (current.order() != members.count()) throw InternalError("element set is not a subgroup");
  return current;
}

std::size_t orbit_count(const Permutation& g) { return g.orbit_count(); }

std::size_t ind(const Permutation& g) { return g.ind(); }

std::vector<ConjugacyClass> conjugacy_classes(const PermGroup& group) {
  std::vector<bool> assigned(group.order(), false);
  std::vector<ConjugacyClass> classes;
  for (std::size_t i = 0; i < group.order(); ++i) {
    if (assigned[i]) continue;
    ConjugacyClass cls{group.element(i)};
    assigned[i] = true;
    for (std::size_t k = 0; k < cls.size(); ++k) {
      for (const auto& g : group.generators()) {
        Permutation c = conjugate(g, cls[k]);
        auto idx = *group.index_of(c);
        if (!assigned[idx]) {
          assigned[idx] = true;
          cls.push_back(std::move(c));
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<PermGroup> subgroups(const PermGroup& group) {
  auto table = group.cayley_table();
  std::vector<PermGroup> out;
  for (const auto& sub : enumerate_subgroups(table)) out.push_back(group.subgroup(sub.elements));
  return out;
}

std::vector<PermGroup> normal_subgroups_abelian(const PermGroup& group) {
  std::vector<PermGroup> out;
  for (auto& h : subgroups(group)) {
    if (h.is_abelian() && h.is_normal_in(group)) out.push_back(std::move(h));
  }
  return out;
}

std::optional<std::size_t> solvable_exponent(const PermGroup& group) {
  if (group.is_trivial()) throw ValidationError("solvable_exponent needs a nontrivial group");
  std::optional<std::size_t> best;
  for (const auto& cls : conjugacy_classes(group)) {
    const auto& g = cls.front();
    if (g.is_identity()) continue;
    if (best && g.ind() >= *best) continue;
    // If g commutes with every conjugate, so does each member of its class.
    bool commutes = std::all_of(cls.begin(), cls.end(), [&](const auto& c) { return g * c == c * g; });
    if (commutes) best = g.ind();
  }
  return best;
}

}  // namespace malle

#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "malle/finite_group.hpp"
#include "malle/perm.hpp"

namespace malle {

// A finitely generated subgroup of S_n, materialized in full. Elements are
// kept sorted so that iteration order, and everything derived from it, is
// deterministic.
class PermGroup {
 public:
  static constexpr std::size_t kDefaultClosureCap = 10000;

  PermGroup() = default;
  PermGroup(std::size_t degree, std::vector<Permutation> generators,
            std::size_t closure_cap = kDefaultClosureCap);

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& elements() const { return elements_; }
  const Permutation& element(std::size_t i) const { return elements_[i]; }
  Permutation identity() const { return Permutation::identity(degree_); }

  bool contains(const Permutation& g) const { return index_.contains(g); }
  std::optional<std::size_t> index_of(const Permutation& g) const;

  bool is_trivial() const { return elements_.size() == 1; }
  bool is_abelian() const;
  bool is_transitive() const;
  // Throws ValidationError unless the group has a single orbit on {1..n}.
  void require_transitive() const;
  std::uint64_t exponent() const;

  // g H g^-1 == H
  bool is_normalized_by(const Permutation& g) const;
  bool is_subgroup_of(const PermGroup& other) const;
  bool is_normal_in(const PermGroup& other) const;

  // Indexes follow elements(); throws CapExceeded for large groups.
  CayleyTable cayley_table() const;
  PermGroup subgroup(const ElementSet& members) const;

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
};

using ConjugacyClass = std::vector<Permutation>;

std::size_t orbit_count(const Permutation& g);
std::size_t ind(const Permutation& g);

// Classes ordered by their smallest element; members sorted.
std::vector<ConjugacyClass> conjugacy_classes(const PermGroup& group);

// All subgroups (|G| <= kSubgroupEnumerationCap), smallest first.
std::vector<PermGroup> subgroups(const PermGroup& group);

// Every abelian normal subgroup, including the trivial one.
std::vector<PermGroup> normal_subgroups_abelian(const PermGroup& group);

// Minimum ind(g) over nonidentity g commuting with all of its conjugates.
// std::nullopt means no such element exists ("no abelian witness").
std::optional<std::size_t> solvable_exponent(const PermGroup& group);

}  // namespace malle

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "malle/finite_group.hpp"
#include "malle/perm.hpp"
#include "malle/perm_group.hpp"

namespace malle {

// (pi(sigma), chi(sigma) mod e). Acts on T by t -> g t^(u^-1) g^-1.
struct ActionPair {
  Permutation conjugator;
  std::uint64_t unit = 1;

  friend bool operator==(const ActionPair&, const ActionPair&) = default;
  friend auto operator<=>(const ActionPair&, const ActionPair&) = default;
};

std::uint64_t inverse_mod(std::uint64_t u, std::uint64_t m);
// Every residue in [1, m) coprime to m; {0} when m == 1.
std::vector<std::uint64_t> unit_residues(std::uint64_t m);

// A finite subgroup of G x (Z/e)^x, fully materialized.
class TwistGroup {
 public:
  static constexpr std::size_t kClosureCap = 10000;

  TwistGroup() = default;
  TwistGroup(std::size_t degree, std::uint64_t exponent, std::vector<ActionPair> generators,
             std::size_t closure_cap = kClosureCap);

  static TwistGroup trivial(std::size_t degree, std::uint64_t exponent) { return {degree, exponent, {}}; }

  std::size_t degree() const { return degree_; }
  std::uint64_t exponent() const { return exponent_; }
  std::size_t order() const { return pairs_.size(); }
  const std::vector<ActionPair>& pairs() const { return pairs_; }
  const std::vector<ActionPair>& generators() const { return generators_; }
  bool contains(const ActionPair& p) const;

  ActionPair compose(const ActionPair& p, const ActionPair& q) const;
  ActionPair identity() const { return {Permutation::identity(degree_), 1 % exponent_}; }

  // The action on T; t must have order dividing exponent().
  Permutation act(const ActionPair& p, const Permutation& t) const;

  // The distinct unit components.
  std::vector<std::uint64_t> unit_projection() const;

  CayleyTable cayley_table() const;
  TwistGroup subgroup(const ElementSet& members) const;

 private:
  std::size_t degree_ = 0;
  std::uint64_t exponent_ = 1;
  std::vector<ActionPair> generators_;
  std::vector<ActionPair> pairs_;
  std::map<ActionPair, std::size_t> index_;
};

// Free form of the action: conjugator * t^(unit^-1 mod e) * conjugator^-1.
Permutation act(const ActionPair& p, const Permutation& t, std::uint64_t exponent);

// A point of the action: a single element or a T-conjugacy class. Members
// are sorted so the first one is a canonical representative.
using ActionPoint = std::vector<Permutation>;
using Orbit = std::vector<ActionPoint>;

// Partition of S into gamma-orbits. With by_conjugacy, S is split into
// T-conjugacy classes first and classes are the points. Throws
// ValidationError if S (or its class set) is not closed under the action.
std::vector<Orbit> orbits(const TwistGroup& gamma, const PermGroup& T, std::span<const Permutation> S,
                          bool by_conjugacy);

std::size_t fixed_point_count(const TwistGroup& gamma, const ActionPair& p, std::span<const Permutation> S);

// Number of T-classes inside S mapped to themselves by p.
std::size_t fixed_class_count(const TwistGroup& gamma, const ActionPair& p, const PermGroup& T,
                              std::span<const Permutation> S);

// Throws ValidationError unless every conjugator normalizes T and
// exponent(T) divides the twist exponent.
void require_acts_on(const TwistGroup& gamma, const PermGroup& T);

}  // namespace malle

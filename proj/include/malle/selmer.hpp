#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "malle/finite_group.hpp"
#include "malle/local_factors.hpp"
#include "malle/perm_group.hpp"
#include "malle/rational.hpp"
#include "malle/twist.hpp"

namespace malle {

// Z/d_1 x ... x Z/d_k with d_i | d_{i+1}. Elements are addressed by a
// mixed-radix index in [0, order); index 0 is the identity.
class FiniteAbelianGroup {
 public:
  using Element = std::vector<std::uint64_t>;
  static constexpr std::uint64_t kOrderCap = 1'000'000;

  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<std::uint64_t> invariant_factors);

  const std::vector<std::uint64_t>& invariant_factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::uint64_t order() const { return order_; }
  std::uint64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }

  std::uint64_t index(const Element& x) const;
  Element element(std::uint64_t index) const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t negate(std::uint64_t a) const;
  std::uint64_t multiple(std::uint64_t k, std::uint64_t a) const;
  std::uint64_t order_of(std::uint64_t a) const;

  ElementSet empty_set() const { return ElementSet(order_); }
  ElementSet generated(std::span<const std::uint64_t> generators) const;
  ElementSet full() const;
  bool is_subgroup(const ElementSet& s) const;

 private:
  std::vector<std::uint64_t> factors_;
  std::uint64_t order_ = 1;
};

struct CyclicNode {
  std::uint64_t generator = 0;  // smallest index generating the subgroup
  std::uint64_t order = 1;
  ElementSet elements;
};

// Every cyclic subgroup once, the trivial one included; sorted by order and
// then by generator.
std::vector<CyclicNode> cyclic_subgroups(const FiniteAbelianGroup& A);

// The integer Moebius function.
int mobius(std::uint64_t n);

// mu(|lambda| / |lambda'|) when lambda' <= lambda, else 0.
int mobius(const CyclicNode& lower, const CyclicNode& upper);

// Moebius function of a finite poset straight from the recursive
// definition, memoized per instance. Elements are subsets ordered by
// inclusion.
class PosetMobiusOracle {
 public:
  explicit PosetMobiusOracle(std::vector<ElementSet> elements);
  int operator()(std::size_t lower, std::size_t upper);

 private:
  bool leq(std::size_t x, std::size_t y) const { return elements_[x].is_subset_of(elements_[y]); }

  std::vector<ElementSet> elements_;
  std::map<std::pair<std::size_t, std::size_t>, int> memo_;
};

// <x, y> = sum_ij x_i M_ij y_j mod n.
class Pairing {
 public:
  Pairing(FiniteAbelianGroup left, FiniteAbelianGroup right, std::uint64_t modulus,
          std::vector<std::vector<std::uint64_t>> matrix);

  const FiniteAbelianGroup& left() const { return left_; }
  const FiniteAbelianGroup& right() const { return right_; }
  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t eval(std::uint64_t x, std::uint64_t y) const;
  bool is_perfect() const { return perfect_; }

 private:
  FiniteAbelianGroup left_;
  FiniteAbelianGroup right_;
  std::uint64_t modulus_;
  std::vector<std::vector<std::uint64_t>> matrix_;
  bool perfect_ = false;
};

// {y : <x, y> = 0 for all x in N}. Throws ValidationError unless perfect.
ElementSet annihilator(const Pairing& P, const ElementSet& N);
// {x : <x, y> = 0 for all y in M}.
ElementSet left_annihilator(const Pairing& P, const ElementSet& M);

struct LocalSizes {
  std::uint64_t L_size = 1;
  std::uint64_t H0_size = 1;
};

// (|H^0(K,T)| / |H^0(K,T*)|) prod |L_p| / |H^0(K_p,T)|.
Rational wiles_rhs(std::span<const LocalSizes> locals, std::uint64_t global_H0_T, std::uint64_t global_H0_Tstar);

// Coefficient of a local element f in the Euler factor of a character h.
// Everything lives in the modeled local group M with unramified subgroup U;
// restriction to inertia is the quotient by U, so subgroups of H^1(I, T) are
// passed as their preimages containing U. The restricted annihilator of h
// is an explicit input (the full group when h = 0).
Rational coefficient_c(const FiniteAbelianGroup& M, const ElementSet& unramified, const ElementSet& conditions,
                       const ElementSet& restricted_annihilator, std::uint64_t f);

// One Frobenius class of a local condition family. Sets live in an ambient
// index space holding the cocycles; H^1 counts are set sizes over |B^1|.
struct LocalModel {
  std::string label;
  std::size_t ambient_size = 0;
  ElementSet cocycles;
  ElementSet coboundaries;
  ElementSet unramified;
  ElementSet conditions;
  std::vector<std::size_t> valuation;  // ordering value of each ambient element
  std::uint64_t h0 = 1;
  Rational weight;

  void validate() const;
};

struct LocalConditionFamily {
  std::vector<LocalModel> classes;
  // Irregular places: carried along, never used for a_inv / b_inv.
  std::map<std::string, LocalModel> irregular;
};

struct InvPair {
  std::optional<std::size_t> a_inv;  // nullopt = infinity
  Rational b_inv;
};

InvPair ab_inv(const LocalConditionFamily& family);

// L = H^1 at every class of gamma, built from the tame cocycles of T.
// Ambient index of (t, y) is index(t) * |T| + index(y).
LocalConditionFamily trivial_condition_family(const PermGroup& T, const TwistGroup& gamma, Ordering ordering);

}  // namespace malle

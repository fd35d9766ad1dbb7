#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "malle/dirichlet.hpp"
#include "malle/euler_factor.hpp"
#include "malle/local_factors.hpp"
#include "malle/perm_group.hpp"
#include "malle/rational.hpp"
#include "malle/selmer.hpp"

namespace malle {

// Invariant factors of an abelian permutation group.
FiniteAbelianGroup abelian_structure(const PermGroup& T);

// T acting on itself by translation. Element i of T maps to
// regular_element(T, i).
PermGroup regular_representation(const FiniteAbelianGroup& T);
Permutation regular_element(const FiniteAbelianGroup& T, std::uint64_t x);

// Every subgroup of A, sorted by size and then by elements.
std::vector<ElementSet> all_subgroups(const FiniteAbelianGroup& A);
std::uint64_t automorphism_count(const FiniteAbelianGroup& A);

// A hom (Z/p^k)^x -> T. For odd p the single generator is the smallest
// primitive root mod p^k; for p = 2 the generators are -1 and 5 (as many
// as the group needs).
struct LocalHom {
  std::uint64_t p = 2;
  std::uint64_t k = 0;
  std::vector<std::uint64_t> generators;  // units mod p^k
  std::vector<std::uint64_t> images;      // indices in T

  bool is_trivial() const;
};

// Smallest c with phi trivial on 1 + p^c Z_p (0 when phi is trivial).
std::size_t conductor_exponent(const FiniteAbelianGroup& T, const LocalHom& phi);
// Sum of conductor exponents of chi o phi over all characters chi of T.
std::size_t disc_exponent(const FiniteAbelianGroup& T, const LocalHom& phi);

// Every hom Z_p^x -> T, through the smallest level that sees all of them.
std::vector<LocalHom> local_homs(const FiniteAbelianGroup& T, std::uint64_t p);

// Sum of x^{v(phi)} over all local homs at p.
EulerFactor local_count_factor(const FiniteAbelianGroup& T, std::uint64_t p, Ordering ordering);

struct UnitGroupHom {
  std::uint64_t modulus = 1;
  std::vector<LocalHom> locals;  // one per prime power exactly dividing modulus

  ElementSet image(const FiniteAbelianGroup& T) const;
};

inline constexpr std::uint64_t kModulusCap = 10'000'000;

// Homs (Z/m)^x -> T of conductor exactly m.
std::vector<UnitGroupHom> homs_with_conductor(const FiniteAbelianGroup& T, std::uint64_t m,
                                              std::uint64_t cap = kModulusCap);

struct Discriminant {
  std::map<std::uint64_t, std::size_t> factorization;
  std::optional<std::uint64_t> value;  // nullopt past 2^64
};

// Conductor-discriminant product for the regular representation of T.
Discriminant discriminant_of(const FiniteAbelianGroup& T, const UnitGroupHom& hom);
// Product of the ramified primes.
std::uint64_t ramified_product(const UnitGroupHom& hom);

struct CountOptions {
  bool surjective_only = false;
  // Divide surjection counts by |Aut(T)| to count fields.
  bool fields = false;
  std::uint64_t prime_cap = kModulusCap;
};

struct CountSeries {
  std::string ordering;
  std::vector<std::uint64_t> grid;
  std::vector<std::uint64_t> counts;  // #{homs with value < X} for X in grid
  std::optional<std::size_t> predicted_a;
  Rational predicted_b;
  bool surjective_only = false;
  bool fields = false;
};

// (a, b) for T with trivial action over Q under the given ordering.
PoleData predicted_exponents(const FiniteAbelianGroup& T, Ordering ordering);

// Exact counts over a sorted grid of bounds. Each X needs the primes up to
// the largest one that can ramify below X; CapExceeded past prime_cap.
CountSeries count(const FiniteAbelianGroup& T, Ordering ordering, std::span<const std::uint64_t> grid,
                  const CountOptions& options = {});

// Number of homs with each exact value below bound, by Moebius sieve when
// surjective_only. Keys with zero count are dropped.
std::map<std::uint64_t, std::int64_t> value_histogram(const FiniteAbelianGroup& T, Ordering ordering,
                                                      std::uint64_t bound, bool surjective_only,
                                                      std::uint64_t prime_cap = kModulusCap);

// Points 10^{j/per_decade} in [X / 10^decades, X), then X itself.
std::vector<std::uint64_t> default_grid(std::uint64_t X, std::uint64_t decades = 4, std::uint64_t per_decade = 4);

struct Fit {
  double a_hat = 0.0;
  double b_hat = 0.0;
  double alpha = 0.0;  // coefficient of log X
  double beta = 0.0;   // coefficient of log log X
  double gamma = 0.0;
};

// log N = alpha log X + beta log log X + gamma, a_hat = 1/alpha,
// b_hat = beta + 1. Needs >= 8 points over >= 3 decades with N > 0.
Fit fit_exponents(const CountSeries& series);

namespace reference {

CountSeries count(const FiniteAbelianGroup& T, Ordering ordering, std::span<const std::uint64_t> grid,
                  const CountOptions& options = {});

// Oracle for value_histogram: walks every conductor, values each hom
// directly and checks its image.
std::map<std::uint64_t, std::int64_t> enumerate_histogram(const FiniteAbelianGroup& T, Ordering ordering,
                                                          std::uint64_t bound, bool surjective_only);

}  // namespace reference

}  // namespace malle

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "malle/catalog.hpp"
#include "malle/perm_group.hpp"
#include "malle/rational.hpp"
#include "malle/twist.hpp"

namespace malle {

struct InvariantReport {
  std::size_t a = 0;
  std::vector<Permutation> minimal_set;
  std::size_t b = 0;
  std::vector<Orbit> orbits;
};

// min ind(t) over t != 1. Throws ValidationError for trivial T.
std::size_t a_invariant(const PermGroup& T);
// A(T): the elements of minimal positive index, sorted.
std::vector<Permutation> minimal_index_set(const PermGroup& T);

// Orbits of the twisted action on the T-classes inside A(T).
InvariantReport b_twisted(const PermGroup& T, const TwistGroup& gamma);
// The same count via Burnside: average number of fixed classes over gamma.
Rational burnside_b(const PermGroup& T, const TwistGroup& gamma);

// Malle's b(K, G): orbits of g -> g^u on the G-classes of A(G).
std::size_t b_malle(const PermGroup& G, const CyclotomicModel& K);

// Max of b_twisted(N, gamma') over N normal in G with 1 < N <= T and
// a(N) = a(T), and over gamma' <= G x (Z/e)^x with gamma' (N x 1) equal to
// gamma (N x 1). Parallel over N.
std::size_t turkelli_B(const PermGroup& G, const PermGroup& T, const TwistGroup& gamma);

struct LowerBound {
  Rational power_of_X;
  std::int64_t power_of_log = 0;
  PermGroup T;
  std::size_t a = 0;
  std::size_t b = 0;
};

// Best (1/a(T), b - 1) over nontrivial abelian normal T and twist groups
// gamma <= G x image(chi mod e_T) projecting onto both factors.
LowerBound lower_bound_exponents(const PermGroup& G, const CyclotomicModel& K);

namespace detail {
// The N of turkelli_B, in subgroup order.
std::vector<PermGroup> turkelli_levels(const PermGroup& G, const PermGroup& T);
// Max of b_twisted(N, gamma') over the admissible lifts gamma'.
std::size_t best_lift(const PermGroup& N, const TwistGroup& gamma);
}  // namespace detail

namespace reference {
std::size_t turkelli_B(const PermGroup& G, const PermGroup& T, const TwistGroup& gamma);
}

}  // namespace malle

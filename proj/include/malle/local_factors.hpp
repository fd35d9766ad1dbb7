#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "malle/euler_factor.hpp"
#include "malle/perm_group.hpp"
#include "malle/twist.hpp"

namespace malle {

// Frobenius data at a place: pi(Fr), the norm m mod e = exponent(T), and
// whether pi ramifies there.
struct LocalClass {
  Permutation conjugator;
  std::uint64_t unit = 1;
  bool pi_ramified = false;
};

// A crossed homomorphism on the tame group <tau, Fr : Fr tau Fr^-1 = tau^m>,
// recorded by its values on the two generators.
struct Cocycle {
  Permutation tau_image;
  Permutation fr_image;

  friend bool operator==(const Cocycle&, const Cocycle&) = default;
  friend auto operator<=>(const Cocycle&, const Cocycle&) = default;
};

enum class Ordering { disc_pi, ram_pi };

Ordering parse_ordering(std::string_view text);
std::string_view to_string(Ordering o);

// All (t, y) with g t g^-1 = t^m and y free. T abelian, class regular.
std::vector<Cocycle> z1_enumerate(const PermGroup& T, const LocalClass& cls);

struct CohomologySizes {
  std::uint64_t z1 = 0;
  std::uint64_t b1 = 0;
  std::uint64_t h1 = 0;
  std::uint64_t h0 = 0;
  std::uint64_t z1_ur = 0;
  std::uint64_t h1_ur = 0;
};

CohomologySizes cohomology_sizes(const PermGroup& T, const LocalClass& cls);

// (1/|T|) sum over Z^1 of x^w(tau image), w = ind for disc_pi and
// [t != 1] for ram_pi.
EulerFactor euler_factor(const PermGroup& T, const LocalClass& cls, Ordering ordering);

// The local class of a twist pair.
LocalClass local_class(const ActionPair& p);

struct DiscCaps {
  std::size_t lower_exponent = 0;
  std::size_t upper_exponent = 0;
};

// Min and max of the supplied attainable valuations at an irregular place.
DiscCaps disc_caps(const PermGroup& T, const LocalClass& cls, std::span<const std::size_t> valuations);

// Throws ValidationError unless T is abelian and cls is a regular class
// whose conjugator normalizes T.
void require_regular(const PermGroup& T, const LocalClass& cls);

}  // namespace malle

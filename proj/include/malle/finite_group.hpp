#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace malle {

using ElementSet = boost::dynamic_bitset<>;

// Desk-scale groups only: subgroup lattices are enumerated exhaustively.
inline constexpr std::size_t kSubgroupEnumerationCap = 200;

// Multiplication table of a small finite group on indices 0..order-1.
struct CayleyTable {
  std::size_t order = 0;
  std::uint32_t identity = 0;
  std::vector<std::uint32_t> mul;  // row-major, mul[a * order + b] == a*b
  std::vector<std::uint32_t> inv;

  std::uint32_t product(std::uint32_t a, std::uint32_t b) const { return mul[a * order + b]; }
};

struct Subgroup {
  ElementSet elements;
  std::vector<std::uint32_t> generators;

  std::size_t order() const { return elements.count(); }
};

// Smallest subgroup containing `generators`.
Subgroup generate(const CayleyTable& table, std::span<const std::uint32_t> generators);

// Every subgroup, each exactly once, sorted by order then by element set.
// Throws CapExceeded above kSubgroupEnumerationCap.
std::vector<Subgroup> enumerate_subgroups(const CayleyTable& table);

}  // namespace malle

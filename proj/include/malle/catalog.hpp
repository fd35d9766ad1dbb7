#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "malle/perm_group.hpp"
#include "malle/twist.hpp"

namespace malle {

// The base field K enters only through the image of the cyclotomic
// character: the subgroup of (Z/modulus)^x generated by `generators`.
// modulus == 1 means the full image, i.e. K = Q.
struct CyclotomicModel {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> generators;

  static CyclotomicModel rationals() { return {}; }
  bool is_rationals() const;
  // Image of chi modulo e, sorted.
  std::vector<std::uint64_t> units_mod(std::uint64_t e) const;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  PermGroup group;
};

const std::vector<CatalogEntry>& catalog();
// Throws ResolutionError for unknown names.
const CatalogEntry& catalog_entry(std::string_view name);

// Nontrivial abelian normal subgroups, smallest first.
std::vector<PermGroup> abelian_normal_targets(const PermGroup& G);

// Names of the twist presets that make sense for (G, T).
std::vector<std::string> preset_names(const PermGroup& G, const PermGroup& T);

// Builds a named preset with exponent e = exponent(T):
//   trivial            {(1, 1)}
//   trivial-pi-over-Q  {1} x (Z/e)^x
//   generic-over-Q     G x (Z/e)^x
//   kluners-split      <((1 4)(2 5)(3 6), 2)>
//   kluners-nonsplit   <((1 4)(2 5)(3 6), 1), (1, 2)>
// Throws ResolutionError for unknown names, ValidationError when the
// preset does not fit (G, T).
TwistGroup twist_preset(std::string_view name, const PermGroup& G, const PermGroup& T);

// {1} x (image of chi mod e) for an arbitrary base-field model.
TwistGroup cyclotomic_twist(std::size_t degree, std::uint64_t e, const CyclotomicModel& K);

}  // namespace malle

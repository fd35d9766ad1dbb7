#include "malle/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "malle/error.hpp"

namespace malle {

bool CyclotomicModel::is_rationals() const { return modulus == 1; }

std::vector<std::uint64_t> CyclotomicModel::units_mod(std::uint64_t e) const {
  if (e == 0) throw ValidationError("exponent 0");
  if (modulus == 0) throw ValidationError("cyclotomic modulus 0");
  std::set<std::uint64_t> allowed;
  std::vector<std::uint64_t> frontier{1 % modulus};
  allowed.insert(frontier.front());
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (auto g : generators) {
      if (std::gcd(g, modulus) != 1) {
        throw ValidationError("cyclotomic generator " + std::to_string(g) + " is not a unit mod " +
                              std::to_string(modulus));
      }
      auto next = (frontier[i] * (g % modulus)) % modulus;
      if (allowed.insert(next).second) frontier.push_back(next);
    }
  }
  // chi lands in (Z/lcm)^x with residue mod `modulus` in the subgroup.
  const std::uint64_t l = std::lcm(modulus, e);
  std::set<std::uint64_t> image;
  for (auto u : unit_residues(l)) {
    if (allowed.contains(u % modulus)) image.insert(u % e);
  }
  if (l == 1) image.insert(0);
  return {image.begin(), image.end()};
}

namespace {

Permutation cyc(const char* text, std::size_t n) { return Permutation::from_cycles(text, n); }

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  auto add = [&](std::string name, std::string description, std::size_t n, std::vector<const char*> gens) {
    std::vector<Permutation> g;
    for (auto* s : gens) g.push_back(cyc(s, n));
    PermGroup group(n, std::move(g));
    group.require_transitive();
    out.push_back({std::move(name), std::move(description), std::move(group)});
  };
  add("C2", "cyclic of order 2 in S2", 2, {"(1 2)"});
  add("C3", "cyclic of order 3, regular in S3", 3, {"(1 2 3)"});
  add("C4", "cyclic of order 4, regular in S4", 4, {"(1 2 3 4)"});
  add("V4-regular", "Klein four-group, regular in S4", 4, {"(1 2)(3 4)", "(1 3)(2 4)"});
  add("C6", "cyclic of order 6, regular in S6", 6, {"(1 2 3 4 5 6)"});
  add("S3", "symmetric group S3, natural action", 3, {"(1 2)", "(1 2 3)"});
  add("D4", "dihedral of order 8 in S4", 4, {"(1 2 3 4)", "(1 3)"});
  add("A4", "alternating group A4, natural action", 4, {"(1 2 3)", "(1 2)(3 4)"});
  add("S4", "symmetric group S4, natural action", 4, {"(1 2)", "(1 2 3 4)"});
  add("C3xC3", "C3 x C3, regular in S9", 9, {"(1 2 3)(4 5 6)(7 8 9)", "(1 4 7)(2 5 8)(3 6 9)"});
  add("kluners", "wreath product C3 wr C2 in S6", 6, {"(1 2 3)", "(1 4)(2 5)(3 6)"});
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
  }
  throw ResolutionError("unknown catalog group '" + std::string(name) + "'");
}

std::vector<PermGroup> abelian_normal_targets(const PermGroup& G) {
  std::vector<PermGroup> out;
  for (auto& t : normal_subgroups_abelian(G)) {
    if (!t.is_trivial()) out.push_back(std::move(t));
  }
  return out;
}

namespace {

bool is_kluners_pair(const PermGroup& G, const PermGroup& T) {
  if (G.degree() != 6 || G.order() != 18 || T.order() != 9) return false;
  return G.contains(cyc("(1 4)(2 5)(3 6)", 6)) && T.contains(cyc("(1 2 3)", 6)) && T.contains(cyc("(4 5 6)", 6));
}

}  // namespace

std::vector<std::string> preset_names(const PermGroup& G, const PermGroup& T) {
  std::vector<std::string> names{"trivial", "trivial-pi-over-Q", "generic-over-Q"};
  if (is_kluners_pair(G, T)) {
    names.emplace_back("kluners-split");
    names.emplace_back("kluners-nonsplit");
  }
  return names;
}

TwistGroup cyclotomic_twist(std::size_t degree, std::uint64_t e, const CyclotomicModel& K) {
  std::vector<ActionPair> gens;
  for (auto u : K.units_mod(e)) gens.push_back({Permutation::identity(degree), u});
  return TwistGroup(degree, e, std::move(gens));
}

TwistGroup twist_preset(std::string_view name, const PermGroup& G, const PermGroup& T) {
  if (!T.is_normal_in(G)) throw ValidationError("T is not a normal subgroup of G");
  const std::size_t n = G.degree();
  const std::uint64_t e = T.exponent();
  const Permutation one = Permutation::identity(n);
  if (name == "trivial") return TwistGroup::trivial(n, e);
  if (name == "trivial-pi-over-Q") return cyclotomic_twist(n, e, CyclotomicModel::rationals());
  if (name == "generic-over-Q") {
    std::vector<ActionPair> gens;
    for (const auto& g : G.generators()) gens.push_back({g, 1 % e});
    for (auto u : unit_residues(e)) gens.push_back({one, u});
    return TwistGroup(n, e, std::move(gens));
  }
  if (name == "kluners-split" || name == "kluners-nonsplit") {
    if (!is_kluners_pair(G, T)) throw ValidationError(std::string(name) + " needs the C3 wr C2 group with T = C3^2");
    const Permutation s = cyc("(1 4)(2 5)(3 6)", 6);
    if (name == "kluners-split") return TwistGroup(n, e, {{s, 2}});
    return TwistGroup(n, e, {{s, 1}, {one, 2}});
  }
  throw ResolutionError("unknown twist preset '" + std::string(name) + "'");
}

}  // namespace malle

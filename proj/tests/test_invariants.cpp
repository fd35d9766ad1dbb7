#include <doctest.h>

#include <algorithm>
#include <random>

#include "malle/catalog.hpp"
#include "malle/error.hpp"
#include "malle/invariants.hpp"

using namespace malle;

namespace {

Permutation cyc(const char* text, std::size_t n) { return Permutation::from_cycles(text, n); }

const PermGroup& kluners() { return catalog_entry("kluners").group; }

PermGroup kluners_T() { return PermGroup(6, {cyc("(1 2 3)", 6), cyc("(4 5 6)", 6)}); }

const Permutation s = Permutation::from_cycles("(1 4)(2 5)(3 6)", 6);

}  // namespace

TEST_CASE("twist closure") {
  auto one = Permutation::identity(6);
  CHECK(TwistGroup(6, 3, {}).order() == 1);
  CHECK(TwistGroup(6, 3, {{s, 2}}).order() == 2);
  CHECK(TwistGroup(6, 3, {{one, 2}}).order() == 2);
  CHECK(TwistGroup(6, 3, {{s, 1}, {one, 2}}).order() == 4);
  CHECK_THROWS_AS(TwistGroup(6, 3, {{s, 3}}), ValidationError);
}

TEST_CASE("twisted action values") {
  auto one = Permutation::identity(6);
  auto t = cyc("(1 2 3)", 6);
  CHECK(act({one, 1}, t, 3) == t);
  CHECK(act({s, 2}, t, 3) == cyc("(4 5 6)", 6).pow(2));
  CHECK(act({one, 2}, t, 3) == t.pow(2));
}

TEST_CASE("twisted action is a left action") {
  const auto& G = kluners();
  auto T = kluners_T();
  std::vector<ActionPair> pairs;
  for (const auto& g : G.elements()) {
    for (std::uint64_t u : {1, 2}) pairs.push_back({g, u});
  }
  for (const auto& p : pairs) {
    for (const auto& q : pairs) {
      ActionPair pq{p.conjugator * q.conjugator, (p.unit * q.unit) % 3};
      for (const auto& t : T.elements()) CHECK(act(pq, t, 3) == act(p, act(q, t, 3), 3));
    }
  }
}

TEST_CASE("orbits and fixed points on the Kluners minimal set") {
  auto T = kluners_T();
  auto A = minimal_index_set(T);
  REQUIRE(A.size() == 4);
  CHECK(orbits(TwistGroup::trivial(6, 3), T, A, false).size() == 4);
  auto split = twist_preset("kluners-split", kluners(), T);
  auto nonsplit = twist_preset("kluners-nonsplit", kluners(), T);
  CHECK(orbits(split, T, A, false).size() == 2);
  CHECK(orbits(nonsplit, T, A, true).size() == 1);
  CHECK(fixed_point_count(split, {s, 2}, A) == 0);
  CHECK(fixed_point_count(split, split.identity(), A) == 4);

  std::vector<Permutation> not_closed{cyc("(1 2 3)", 6)};
  CHECK_THROWS_AS(orbits(split, T, not_closed, false), ValidationError);
}

TEST_CASE("a and A") {
  CHECK(a_invariant(kluners_T()) == 2);
  CHECK(a_invariant(catalog_entry("C2").group) == 1);
  CHECK(a_invariant(catalog_entry("V4-regular").group) == 2);
  auto c4 = catalog_entry("C4").group;
  auto A = minimal_index_set(c4);
  REQUIRE(A.size() == 1);
  CHECK(A.front() == cyc("(1 3)(2 4)", 4));
  std::vector<Permutation> expected{cyc("(1 2 3)", 6), cyc("(1 3 2)", 6), cyc("(4 5 6)", 6), cyc("(4 6 5)", 6)};
  std::sort(expected.begin(), expected.end());
  CHECK(minimal_index_set(kluners_T()) == expected);
  CHECK_THROWS_AS(a_invariant(PermGroup::trivial(3)), ValidationError);
}

TEST_CASE("Kluners b values") {
  auto T = kluners_T();
  CHECK(b_twisted(T, twist_preset("kluners-split", kluners(), T)).b == 2);
  CHECK(b_twisted(T, twist_preset("kluners-nonsplit", kluners(), T)).b == 1);
  CHECK(b_twisted(T, twist_preset("trivial", kluners(), T)).b == 4);
  CHECK(b_malle(kluners(), CyclotomicModel::rationals()) == 1);
  CHECK(turkelli_B(kluners(), T, twist_preset("trivial-pi-over-Q", kluners(), T)) == 2);
  CHECK(turkelli_B(kluners(), T, twist_preset("kluners-nonsplit", kluners(), T)) == 1);
  auto lb = lower_bound_exponents(kluners(), CyclotomicModel::rationals());
  CHECK(lb.power_of_X == Rational(1, 2));
  CHECK(lb.power_of_log == 1);
}

TEST_CASE("b_malle small cases") {
  CHECK(b_malle(catalog_entry("S3").group, CyclotomicModel::rationals()) == 1);
  // Abelian G: b_malle matches the trivial-conjugator twist.
  for (const char* name : {"C2", "C3", "C4", "V4-regular", "C6", "C3xC3"}) {
    const auto& G = catalog_entry(name).group;
    CHECK(b_malle(G, CyclotomicModel::rationals()) == b_twisted(G, twist_preset("trivial-pi-over-Q", G, G)).b);
  }
  // Over Q(zeta_3) the cube roots of unity are no longer identified.
  CyclotomicModel q_zeta3{3, {1}};
  CHECK(b_malle(catalog_entry("C3").group, q_zeta3) == 2);
  CHECK(b_malle(catalog_entry("C3").group, CyclotomicModel::rationals()) == 1);
}

TEST_CASE("cyclotomic model units") {
  CHECK(CyclotomicModel::rationals().units_mod(12) == std::vector<std::uint64_t>{1, 5, 7, 11});
  CyclotomicModel sub{8, {3}};
  CHECK(sub.units_mod(4) == std::vector<std::uint64_t>{1, 3});
  CHECK(sub.units_mod(8) == std::vector<std::uint64_t>{1, 3});
  CyclotomicModel five{5, {4}};
  CHECK(five.units_mod(3) == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("lower bound exponents") {
  auto lb = lower_bound_exponents(catalog_entry("S4").group, CyclotomicModel::rationals());
  CHECK(lb.power_of_X == Rational(1, 2));
  CHECK(lb.power_of_log == 0);
  CHECK(lb.T.order() == 4);
  for (const char* name : {"C2", "C3", "C4", "V4-regular", "C3xC3"}) {
    const auto& G = catalog_entry(name).group;
    auto r = lower_bound_exponents(G, CyclotomicModel::rationals());
    CHECK(r.power_of_X == Rational(1, static_cast<std::int64_t>(a_invariant(G))));
    CHECK(r.power_of_log == static_cast<std::int64_t>(b_malle(G, CyclotomicModel::rationals())) - 1);
  }
}

TEST_CASE("catalog-wide invariant properties") {
  std::mt19937_64 rng(11);
  for (const auto& entry : catalog()) {
    const auto& G = entry.group;
    for (const auto& T : abelian_normal_targets(G)) {
      const auto A = minimal_index_set(T);
      for (const auto& name : preset_names(G, T)) {
        CAPTURE(entry.name);
        CAPTURE(name);
        auto gamma = twist_preset(name, G, T);
        auto report = b_twisted(T, gamma);
        CHECK(Rational(static_cast<std::int64_t>(report.b)) == burnside_b(T, gamma));
        CHECK(report.b >= 1);
        CHECK(report.b <= A.size());
        for (const auto& t : report.minimal_set) CHECK(t.ind() == report.a);
        auto B = turkelli_B(G, T, gamma);
        CHECK(B >= report.b);
        // T is abelian, so A(T) lies in the center and B collapses to b.
        CHECK(B == report.b);
        CHECK(B == reference::turkelli_B(G, T, gamma));

        // Coboundary insensitivity: replace each conjugator g by t g.
        std::vector<ActionPair> shifted;
        for (const auto& p : gamma.generators()) {
          std::uniform_int_distribution<std::size_t> pick(0, T.order() - 1);
          shifted.push_back({T.element(pick(rng)) * p.conjugator, p.unit});
        }
        CHECK(b_twisted(T, TwistGroup(G.degree(), gamma.exponent(), shifted)).b == report.b);
      }
    }
  }
}

TEST_CASE("twist validation") {
  auto T = kluners_T();
  TwistGroup bad(6, 3, {{cyc("(3 4)", 6), 1}});
  CHECK_THROWS_AS(b_twisted(T, bad), ValidationError);
  CHECK_THROWS_AS(twist_preset("kluners-split", catalog_entry("S4").group, catalog_entry("V4-regular").group),
                  ValidationError);
  CHECK_THROWS_AS(twist_preset("nope", kluners(), T), ResolutionError);
  CHECK_THROWS_AS(catalog_entry("nope"), ResolutionError);
}

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "malle/error.hpp"
#include "malle/perm.hpp"
#include "malle/perm_group.hpp"
#include "malle/rational.hpp"

using namespace malle;

namespace {

Permutation cyc(const char* text, std::size_t n) { return Permutation::from_cycles(text, n); }

PermGroup sym(std::size_t n) { return PermGroup(n, {cyc("(1 2)", n), Permutation::from_cycles(
    [n] {
      std::string s = "(";
      for (std::size_t i = 1; i <= n; ++i) s += std::to_string(i) + (i == n ? ")" : " ");
      return s;
    }(), n)}); }

}  // namespace

TEST_CASE("rational arithmetic stays normalized") {
  Rational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK((a + Rational(3, 2)).is_zero());
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-7").str() == "-7");
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), ValidationError);
  CHECK_THROWS_AS(Rational(INT64_MAX) * Rational(2), CapExceeded);
}

TEST_CASE("cycle notation round trip and composition order") {
  auto p = cyc("(1 2 3)(4 5 6)", 6);
  CHECK(p.cycle_string() == "(1 2 3)(4 5 6)");
  CHECK(cyc("()", 4).is_identity());
  CHECK(cyc("", 4).is_identity());
  // (1 2)(2 3): apply (2 3) first, so 2 -> 3 -> 3, 3 -> 2 -> 1.
  auto q = cyc("(1 2)(2 3)", 3);
  CHECK(q.cycle_string() == "(1 2 3)");
  CHECK((cyc("(1 2)", 3) * cyc("(2 3)", 3)) == q);
  CHECK_THROWS_AS(cyc("(1 7)", 6), ValidationError);
  CHECK_THROWS_AS(cyc("(1 2", 6), ValidationError);
  CHECK_THROWS_AS(Permutation(std::vector<std::uint32_t>{0, 0}), ValidationError);
}

TEST_CASE("orbit_count and ind") {
  CHECK(Permutation::identity(6).orbit_count() == 6);
  CHECK(cyc("(1 2 3)", 6).orbit_count() == 4);
  CHECK(cyc("(1 2 3 4)", 4).orbit_count() == 1);
  CHECK(cyc("(1 2 3)", 6).ind() == 2);
  CHECK(cyc("(1 2 3 4)", 4).ind() == 3);
  CHECK(Permutation::identity(5).ind() == 0);
}

TEST_CASE("ind is a class function and power invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::uint32_t> a(7), b(7);
    std::iota(a.begin(), a.end(), 0u);
    std::iota(b.begin(), b.end(), 0u);
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    Permutation g(a), h(b);
    CHECK(conjugate(h, g).ind() == g.ind());
    auto ord = static_cast<std::int64_t>(g.order());
    for (std::int64_t k = 1; k <= ord; ++k) {
      if (std::gcd(k, ord) == 1) CHECK(g.pow(k).ind() == g.ind());
    }
    CHECK(g.pow(-1) == g.inverse());
    CHECK((g * g.inverse()).is_identity());
  }
}

TEST_CASE("closure and group properties") {
  auto s3 = sym(3);
  CHECK(s3.order() == 6);
  CHECK(s3.is_transitive());
  CHECK_FALSE(s3.is_abelian());
  CHECK(s3.exponent() == 6);
  auto s4 = sym(4);
  CHECK(s4.order() == 24);
  PermGroup split(4, {cyc("(1 2)", 4)});
  CHECK_FALSE(split.is_transitive());
  CHECK_THROWS_AS(split.require_transitive(), ValidationError);
  CHECK_THROWS_AS(PermGroup(8, {cyc("(1 2)", 8), cyc("(1 2 3 4 5 6 7 8)", 8)}, 1000), CapExceeded);
  // Closed under products and inverses.
  for (const auto& a : s4.elements()) {
    CHECK(s4.contains(a.inverse()));
    for (const auto& b : s4.elements()) CHECK(s4.contains(a * b));
  }
}

TEST_CASE("conjugacy classes") {
  auto s3 = sym(3);
  auto classes = conjugacy_classes(s3);
  std::vector<std::size_t> sizes;
  for (const auto& c : classes) sizes.push_back(c.size());
  CHECK(sizes == std::vector<std::size_t>{1, 3, 2});

  auto s4 = sym(4);
  std::size_t total = 0;
  for (const auto& cls : conjugacy_classes(s4)) {
    total += cls.size();
    for (const auto& c : cls) CHECK(c.ind() == cls.front().ind());
    for (const auto& g : s4.generators()) {
      CHECK(std::binary_search(cls.begin(), cls.end(), conjugate(g, cls.front())));
    }
  }
  CHECK(total == 24);

  PermGroup c4(4, {cyc("(1 2 3 4)", 4)});
  for (const auto& cls : conjugacy_classes(c4)) CHECK(cls.size() == 1);
}

TEST_CASE("subgroup lattice of S4") {
  auto s4 = sym(4);
  auto subs = subgroups(s4);
  CHECK(subs.size() == 30);
  std::map<std::size_t, int> by_order;
  for (const auto& h : subs) ++by_order[h.order()];
  CHECK(by_order[1] == 1);
  CHECK(by_order[2] == 9);
  CHECK(by_order[3] == 4);
  CHECK(by_order[4] == 7);
  CHECK(by_order[6] == 4);
  CHECK(by_order[8] == 3);
  CHECK(by_order[12] == 1);
  CHECK(by_order[24] == 1);
}

TEST_CASE("normal abelian subgroups") {
  auto s4 = sym(4);
  auto normals = normal_subgroups_abelian(s4);
  REQUIRE(normals.size() == 2);
  CHECK(normals[0].is_trivial());
  CHECK(normals[1].order() == 4);
  CHECK(normals[1].contains(cyc("(1 2)(3 4)", 4)));
  CHECK(normals[1].contains(cyc("(1 3)(2 4)", 4)));
  for (const auto& n : normals) {
    for (const auto& g : s4.generators()) CHECK(n.is_normalized_by(g));
  }

  auto s3 = sym(3);
  auto n3 = normal_subgroups_abelian(s3);
  REQUIRE(n3.size() == 2);
  CHECK(n3[1].contains(cyc("(1 2 3)", 3)));

  PermGroup c2(2, {cyc("(1 2)", 2)});
  CHECK(normal_subgroups_abelian(c2).size() == 2);
}

TEST_CASE("solvable exponent") {
  CHECK(solvable_exponent(sym(4)) == 2u);
  CHECK(solvable_exponent(sym(3)) == 2u);
  PermGroup c4(4, {cyc("(1 2 3 4)", 4)});
  CHECK(solvable_exponent(c4) == 2u);
  PermGroup c2(2, {cyc("(1 2)", 2)});
  CHECK(solvable_exponent(c2) == 1u);
  // A_5 has no element commuting with all of its conjugates.
  PermGroup a5(5, {cyc("(1 2 3)", 5), cyc("(1 2 3 4 5)", 5)});
  CHECK_FALSE(solvable_exponent(a5).has_value());
  CHECK_THROWS_AS(solvable_exponent(PermGroup::trivial(3)), ValidationError);
}

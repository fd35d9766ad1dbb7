#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "malle/catalog.hpp"
#include "malle/dirichlet.hpp"
#include "malle/error.hpp"
#include "malle/invariants.hpp"

using namespace malle;

namespace {

FrobenianFamily single(EulerFactor f) {
  FrobenianFamily family;
  family.classes.push_back({"all", std::move(f), Rational(1), {}});
  return family;
}

EulerFactor poly(std::map<std::size_t, Rational> c) { return EulerFactor(std::move(c)); }

bool squarefree(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % (d * d) == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("aq_bq") {
  auto p = aq_bq(single(poly({{0, 1}, {1, 1}})));
  CHECK(p.a == 1u);
  CHECK(p.b == Rational(1));
  auto v = aq_bq(single(poly({{0, 1}, {2, 3}})));
  CHECK(v.a == 2u);
  CHECK(v.b == Rational(3));
  FrobenianFamily split;
  split.classes.push_back({"(1,1)", poly({{0, 1}, {2, 4}, {4, 4}}), Rational(1, 2), {}});
  split.classes.push_back({"(s,2)", poly({{0, 1}, {4, 2}}), Rational(1, 2), {}});
  auto k = aq_bq(split);
  CHECK(k.a == 2u);
  CHECK(k.b == Rational(2));
  auto none = aq_bq(single(EulerFactor::one()));
  CHECK_FALSE(none.a.has_value());
  CHECK(none.b.is_zero());
}

TEST_CASE("family validation") {
  FrobenianFamily bad;
  bad.classes.push_back({"x", poly({{0, 1}}), Rational(1, 2), {}});
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  auto shifted = single(poly({{0, 2}, {1, 1}}));
  CHECK_THROWS_AS(shifted.validate(), ValidationError);
  auto f = single(poly({{0, 1}, {1, 1}}));
  f.overrides[4] = EulerFactor::one();
  CHECK_THROWS_AS(f.validate(), ValidationError);
  FrobenianFamily two;
  two.classes.push_back({"a", poly({{0, 1}}), Rational(1, 2), {}});
  two.classes.push_back({"b", poly({{0, 1}, {1, 1}}), Rational(1, 2), {}});
  CHECK_THROWS_AS(two.factor_at(5), ValidationError);
  CHECK_THROWS_AS(expand(two, 10, 10), ValidationError);
}

TEST_CASE("expand examples") {
  auto sf = expand(single(poly({{0, 1}, {1, 1}})), 1000, 1000);
  for (std::uint64_t n = 1; n <= 1000; ++n) CHECK(sf.at(n) == Rational(squarefree(n) ? 1 : 0));
  auto one = expand(single(EulerFactor::one()), 100, 100);
  CHECK(one.at(1) == Rational(1));
  for (std::uint64_t n = 2; n <= 100; ++n) CHECK(one.at(n).is_zero());
  auto v4 = expand(single(poly({{0, 1}, {2, 3}})), 100, 100);
  CHECK(v4.at(9) == Rational(3));
  CHECK(v4.at(3).is_zero());
  CHECK(v4.at(36) == Rational(9));
  CHECK_THROWS_AS(expand(single(EulerFactor::one()), 10, 100, 50), CapExceeded);
}

TEST_CASE("expand with overrides and truncation matches the serial reference") {
  auto family = single(poly({{0, 1}, {1, 2}, {2, Rational(1, 3)}}));
  family.overrides[2] = poly({{0, 1}, {2, 1}, {3, 2}});
  family.overrides[3] = poly({{0, 2}, {1, 1}});
  family.overrides[101] = poly({{0, 3}});
  for (std::uint64_t P : {1ull, 5ull, 50ull, 200ull}) {
    auto par = expand(family, P, 2000);
    auto ser = reference::expand(family, P, 2000);
    CHECK(par.values == ser.values);
    // values[1] is the product of override constant terms below P.
    Rational c1(1);
    for (const auto& [p, f] : family.overrides) {
      if (p <= P) c1 *= f.constant();
    }
    CHECK(par.at(1) == c1);
  }
  auto c = expand(family, 2000, 2000);
  for (std::uint64_t m = 1; m <= 40; ++m) {
    for (std::uint64_t n = 1; n <= 40; ++n) {
      if (std::gcd(m, n) == 1) CHECK(c.at(m * n) * c.at(1) == c.at(m) * c.at(n));
    }
  }
}

TEST_CASE("classification by residue") {
  const auto& G = catalog_entry("C3").group;
  auto family = family_from_twist(G, twist_preset("trivial-pi-over-Q", G, G), Ordering::ram_pi, true);
  CHECK(family.modulus == 3);
  CHECK(family.factor_at(7).str() == "1 + 2x");
  CHECK(family.factor_at(5).str() == "1");
  CHECK_THROWS_AS(family.factor_at(3), ValidationError);
  family.overrides[3] = poly({{0, 1}, {1, 2}});
  auto c = expand(family, 100, 100);
  CHECK(c.at(7) == Rational(2));
  CHECK(c.at(5).is_zero());
  CHECK(c.at(21) == Rational(4));
  CHECK(c.values == reference::expand(family, 100, 100).values);
}

TEST_CASE("zeta factor estimates") {
  auto family = single(poly({{0, 1}, {1, 1}}));
  const double zeta4 = std::pow(std::numbers::pi, 4) / 90.0;
  CHECK(std::abs(zeta_factor_estimate(family, 2.0, 100000) - 1.0 / zeta4) < 1e-6);
  CHECK(zeta_factor_estimate(single(EulerFactor::one()), 3.0, 1000) == doctest::Approx(1.0));
  CHECK_THROWS_AS(zeta_factor_estimate(family, 1.0, 1000), ValidationError);
  CHECK(std::abs(zeta_factor_estimate(family, 2.0, 100000) - reference::zeta_factor_estimate(family, 2.0, 100000)) <
        1e-12);

  // Cauchy trend: P -> 2P differences shrink.
  auto v4 = single(poly({{0, 1}, {2, 3}}));
  double prev = zeta_factor_estimate(v4, 1.0, 1000);
  double last_gap = INFINITY;
  for (std::uint64_t P = 2000; P <= 64000; P *= 2) {
    double cur = zeta_factor_estimate(v4, 1.0, P);
    double gap = std::abs(cur - prev);
    CHECK(gap < last_gap);
    last_gap = gap;
    prev = cur;
  }
  CHECK(prev > 0.0);
}

TEST_CASE("Delange predictions") {
  auto p = delange_predict(1, Rational(1), 6.0 / (std::numbers::pi * std::numbers::pi));
  CHECK(p.c == doctest::Approx(6.0 / (std::numbers::pi * std::numbers::pi)));
  CHECK(p.x_power == Rational(1));
  CHECK(p.log_power.is_zero());
  CHECK(delange_predict(1, Rational(0), 1.0).degenerate);
  CHECK(delange_predict(2, Rational(-1), 1.0).degenerate);
  auto half = delange_predict(2, Rational(1), 0.8);
  CHECK(half.c == doctest::Approx(0.4));
  auto frac = delange_predict(1, Rational(1, 2), 1.0);
  CHECK(frac.c == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)));
}

TEST_CASE("partial sum comparison") {
  auto family = single(poly({{0, 1}, {1, 1}}));
  auto coeffs = expand(family, 100000, 100000);
  auto pred = delange_predict(1, Rational(1), g_at_pole(family, 1000000));
  std::vector<std::uint64_t> grid{1000, 10000, 100000};
  auto rows = partial_sum_compare(coeffs, pred, grid);
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].actual == 60794.0);
  CHECK(std::abs(rows[2].ratio - 1.0) < 0.005);
  auto zero = expand(single(EulerFactor::one()), 10, 10);
  std::vector<std::uint64_t> small{2, 5, 10};
  for (const auto& r : partial_sum_compare(zero, pred, small)) CHECK(r.actual == 1.0);
  std::vector<std::uint64_t> beyond{11};
  CHECK_THROWS_AS(partial_sum_compare(zero, pred, beyond), ValidationError);
}

TEST_CASE("aq_bq of twist families equals (a, b) across the catalog") {
  for (const auto& entry : catalog()) {
    const auto& G = entry.group;
    for (const auto& T : abelian_normal_targets(G)) {
      for (const auto& name : preset_names(G, T)) {
        CAPTURE(entry.name);
        CAPTURE(name);
        auto gamma = twist_preset(name, G, T);
        auto pole = aq_bq(family_from_twist(T, gamma, Ordering::disc_pi));
        REQUIRE(pole.a.has_value());
        CHECK(*pole.a == a_invariant(T));
        CHECK(pole.b == Rational(static_cast<std::int64_t>(b_twisted(T, gamma).b)));
      }
    }
  }
}

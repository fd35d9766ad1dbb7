#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "malle/euler_factor.hpp"
#include "malle/local_factors.hpp"
#include "malle/perm_group.hpp"
#include "malle/rational.hpp"
#include "malle/twist.hpp"

namespace malle {

struct FrobenianClass {
  std::string label;
  EulerFactor factor;
  Rational weight;
  // Residues mod the family modulus whose primes fall in this class.
  std::vector<std::uint64_t> residues;
};

// Euler factors indexed by Frobenius class, with class weights summing to 1.
// A prime p takes, in order: its override; the class owning p mod modulus
// (when modulus > 0); the only class of a one-class family.
struct FrobenianFamily {
  std::vector<FrobenianClass> classes;
  std::uint64_t modulus = 0;
  std::map<std::uint64_t, EulerFactor> overrides;

  // Weights sum to 1, regular factors have constant term 1, residues are
  // units mod modulus and owned by at most one class.
  void validate() const;
  // Throws ValidationError when p cannot be classified.
  const EulerFactor& factor_at(std::uint64_t p) const;
};

// One class per element of gamma, weight 1/|gamma|. With by_residue set,
// gamma must be {1} x (Z/e)^x and primes are classified by p mod e.
FrobenianFamily family_from_twist(const PermGroup& T, const TwistGroup& gamma, Ordering ordering,
                                  bool by_residue = false);

struct PoleData {
  std::optional<std::size_t> a;  // nullopt: every regular factor is constant
  Rational b;
};

PoleData aq_bq(const FrobenianFamily& family);

struct DirichletCoefficients {
  std::uint64_t bound = 0;
  std::vector<Rational> values;  // values[n] for 1 <= n <= bound; values[0] unused

  const Rational& at(std::uint64_t n) const { return values.at(n); }
  Rational partial_sum(std::uint64_t x) const;
};

inline constexpr std::uint64_t kExpandCap = 50'000'000;

// Coefficients of prod_{p <= P} Q_p(p^-s) up to N. Parallel over n.
DirichletCoefficients expand(const FrobenianFamily& family, std::uint64_t prime_bound, std::uint64_t coeff_bound,
                             std::uint64_t cap = kExpandCap);

// prod_{p <= P} Q_p(p^-s)
double partial_product(const FrobenianFamily& family, double s, std::uint64_t prime_bound);

// prod_{p <= P} Q_p(p^-s) (1 - p^-as)^b for s > 1/a.
double zeta_factor_estimate(const FrobenianFamily& family, double s, std::uint64_t prime_bound);

// The same regularized product evaluated at the pole s = 1/a.
double g_at_pole(const FrobenianFamily& family, std::uint64_t prime_bound);

struct Prediction {
  bool degenerate = false;  // b in Z<=0: only O(X^(1/a) (log X)^(-1+eps)) is claimed
  double c = 0.0;
  Rational x_power;
  Rational log_power;

  double main_term(double x) const;
};

// c = G residue^b / (a^b Gamma(b))
Prediction delange_predict(std::size_t a, const Rational& b, double g_at_pole, double residue = 1.0);

struct CompareRow {
  std::uint64_t x = 0;
  double actual = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;
};

std::vector<CompareRow> partial_sum_compare(const DirichletCoefficients& coeffs, const Prediction& prediction,
                                            std::span<const std::uint64_t> grid);

namespace reference {
DirichletCoefficients expand(const FrobenianFamily& family, std::uint64_t prime_bound, std::uint64_t coeff_bound,
                             std::uint64_t cap = kExpandCap);
double zeta_factor_estimate(const FrobenianFamily& family, double s, std::uint64_t prime_bound);
}  // namespace reference

}  // namespace malle

#include "malle/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <set>

#include "dirichlet_internal.hpp"
#include "malle/error.hpp"
#include "malle/primes.hpp"

namespace malle {

void FrobenianFamily::validate() const {
  if (classes.empty()) throw ValidationError("Frobenian family has no classes");
  Rational total;
  for (const auto& c : classes) {
    if (c.weight <= Rational(0)) throw ValidationError("class weights must be positive");
    if (c.factor.constant() != Rational(1)) {
      throw ValidationError("regular Euler factor " + c.factor.str() + " does not have constant term 1");
    }
    total += c.weight;
  }
  if (total != Rational(1)) throw ValidationError("class weights sum to " + total.str() + ", not 1");
  std::set<std::uint64_t> owned;
  for (const auto& c : classes) {
    if (!c.residues.empty() && modulus == 0) throw ValidationError("residues given without a modulus");
    for (auto r : c.residues) {
      if (r >= modulus || std::gcd(r, modulus) != 1) {
        throw ValidationError("residue " + std::to_string(r) + " is not a unit mod " + std::to_string(modulus));
      }
      if (!owned.insert(r).second) throw ValidationError("residue " + std::to_string(r) + " assigned twice");
    }
  }
  for (const auto& [p, f] : overrides) {
    if (!is_prime(p)) throw ValidationError("override at non-prime " + std::to_string(p));
  }
}

const EulerFactor& FrobenianFamily::factor_at(std::uint64_t p) const { return internal::Classifier(*this).at(p); }

FrobenianFamily family_from_twist(const PermGroup& T, const TwistGroup& gamma, Ordering ordering, bool by_residue) {
  require_acts_on(gamma, T);
  FrobenianFamily family;
  const Rational w(1, static_cast<std::int64_t>(gamma.order()));
  for (const auto& p : gamma.pairs()) {
    FrobenianClass cls;
    cls.label = "(" + p.conjugator.cycle_string() + ", " + std::to_string(p.unit) + ")";
    cls.factor = euler_factor(T, local_class(p), ordering);
    cls.weight = w;
    family.classes.push_back(std::move(cls));
  }
  if (by_residue) {
    const std::uint64_t e = gamma.exponent();
    if (gamma.unit_projection() != unit_residues(e) || gamma.order() != unit_residues(e).size()) {
      throw ValidationError("classification by residue needs gamma = {1} x (Z/e)^x");
    }
    family.modulus = e;
    for (std::size_t i = 0; i < gamma.order(); ++i) family.classes[i].residues = {gamma.pairs()[i].unit};
  }
  return family;
}

PoleData aq_bq(const FrobenianFamily& family) {
  family.validate();
  PoleData out;
  for (const auto& c : family.classes) {
    auto k = c.factor.least_positive_exponent();
    if (k && (!out.a || *k < *out.a)) out.a = k;
  }
  if (!out.a) return out;
  for (const auto& c : family.classes) out.b += c.weight * c.factor.coefficient(*out.a);
  return out;
}

Rational DirichletCoefficients::partial_sum(std::uint64_t x) const {
  Rational sum;
  const std::uint64_t top = std::min<std::uint64_t>(x, bound);
  for (std::uint64_t n = 1; n <= top; ++n) sum += values[n];
  return sum;
}

DirichletCoefficients expand(const FrobenianFamily& family, std::uint64_t prime_bound, std::uint64_t coeff_bound,
                             std::uint64_t cap) {
  family.validate();
  internal::check_expand_bounds(prime_bound, coeff_bound, cap);
  const std::uint64_t N = coeff_bound;
  const std::uint64_t reach = std::min(prime_bound, N);
  internal::Classifier classify(family);
  // Classify up front so the parallel loop cannot hit an unclassified prime.
  for (auto p : primes_up_to(reach)) (void)classify.at(p);

  std::vector<std::pair<std::uint64_t, Rational>> near;
  for (const auto& [p, f] : family.overrides) {
    if (p <= reach) near.emplace_back(p, f.constant());
  }
  const Rational base = internal::distant_override_constant(family, prime_bound, N);
  const auto spf = smallest_prime_factors(N);

  DirichletCoefficients out;
  out.bound = N;
  out.values.assign(N + 1, Rational(0));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1 << 14)
  for (std::int64_t i = 1; i <= static_cast<std::int64_t>(N); ++i) {
    try {
      auto n = static_cast<std::uint64_t>(i);
      Rational v = base;
      std::uint64_t m = n;
      while (m > 1 && !v.is_zero()) {
        const std::uint64_t p = spf[m];
        std::size_t k = 0;
        while (m % p == 0) {
          m /= p;
          ++k;
        }
        v = p > prime_bound ? Rational(0) : v * classify.at(p).coefficient(k);
      }
      for (const auto& [p, c0] : near) {
        if (v.is_zero()) break;
        if (n % p != 0) v *= c0;
      }
      out.values[n] = v;
    } catch (...) {
#pragma omp critical(malle_expand_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

double partial_product(const FrobenianFamily& family, double s, std::uint64_t prime_bound) {
  family.validate();
  internal::Classifier classify(family);
  double log_sum = 0.0;
  for (auto p : primes_up_to(prime_bound)) log_sum += internal::log_local(classify.at(p), p, s, {});
  return std::exp(log_sum);
}

namespace {

// Fixed-size blocks summed in a fixed order keep the result independent of
// the thread count.
constexpr std::size_t kBlock = 4096;

double regularized_product(const FrobenianFamily& family, double s, std::uint64_t prime_bound) {
  internal::Classifier classify(family);
  const auto reg = internal::regularizer(family);
  const auto primes = primes_up_to(prime_bound);
  for (auto p : primes) (void)classify.at(p);
  const std::size_t blocks = (primes.size() + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(primes.size(), lo + kBlock);
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) sum += internal::log_local(classify.at(primes[i]), primes[i], s, reg);
    partial[static_cast<std::size_t>(b)] = sum;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return std::exp(total);
}

}  // namespace

double zeta_factor_estimate(const FrobenianFamily& family, double s, std::uint64_t prime_bound) {
  auto pole = aq_bq(family);
  if (pole.a && s <= 1.0 / static_cast<double>(*pole.a)) {
    throw ValidationError("s = " + std::to_string(s) + " is not right of the pole at 1/" + std::to_string(*pole.a));
  }
  return regularized_product(family, s, prime_bound);
}

double g_at_pole(const FrobenianFamily& family, std::uint64_t prime_bound) {
  auto pole = aq_bq(family);
  if (!pole.a) throw ValidationError("the family has no pole (a = infinity)");
  return regularized_product(family, 1.0 / static_cast<double>(*pole.a), prime_bound);
}

double Prediction::main_term(double x) const {
  if (degenerate) return 0.0;
  return c * std::pow(x, x_power.to_double()) * std::pow(std::log(x), log_power.to_double());
}

Prediction delange_predict(std::size_t a, const Rational& b, double g_at_pole, double residue) {
  if (a == 0) throw ValidationError("a must be positive");
  Prediction out;
  out.x_power = Rational(1, static_cast<std::int64_t>(a));
  out.log_power = b - Rational(1);
  if (b.is_integer() && b <= Rational(0)) {
    out.degenerate = true;
    out.log_power = Rational(-1);
    return out;
  }
  const double bd = b.to_double();
  out.c = g_at_pole * std::pow(residue, bd) / (std::pow(static_cast<double>(a), bd) * std::tgamma(bd));
  return out;
}

std::vector<CompareRow> partial_sum_compare(const DirichletCoefficients& coeffs, const Prediction& prediction,
                                            std::span<const std::uint64_t> grid) {
  std::vector<std::uint64_t> xs(grid.begin(), grid.end());
  std::sort(xs.begin(), xs.end());
  std::vector<CompareRow> rows;
  Rational running;
  std::uint64_t done = 0;
  for (auto x : xs) {
    if (x == 0 || x > coeffs.bound) {
      throw ValidationError("grid point " + std::to_string(x) + " outside 1.." + std::to_string(coeffs.bound));
    }
    for (; done < x; ++done) running += coeffs.values[done + 1];
    CompareRow row;
    row.x = x;
    row.actual = running.to_double();
    row.predicted = prediction.main_term(static_cast<double>(x));
    row.ratio = row.predicted > 0.0 ? row.actual / row.predicted : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace malle

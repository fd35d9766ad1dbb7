#include <cmath>

#include "../dirichlet_internal.hpp"
#include "malle/dirichlet.hpp"
#include "malle/primes.hpp"

namespace malle::reference {

// Multiplies the Euler factors in one prime at a time, in place, walking
// indices downward so each read still sees the previous product.
DirichletCoefficients expand(const FrobenianFamily& family, std::uint64_t prime_bound, std::uint64_t coeff_bound,
                             std::uint64_t cap) {
  family.validate();
  internal::check_expand_bounds(prime_bound, coeff_bound, cap);
  const std::uint64_t N = coeff_bound;
  internal::Classifier classify(family);

  DirichletCoefficients out;
  out.bound = N;
  out.values.assign(N + 1, Rational(0));
  out.values[1] = internal::distant_override_constant(family, prime_bound, N);

  for (auto p : primes_up_to(std::min(prime_bound, N))) {
    const EulerFactor& f = classify.at(p);
    const Rational q0 = f.constant();
    for (std::uint64_t n = N - N % p; n >= p; n -= p) {
      Rational acc = q0 * out.values[n];
      std::uint64_t m = n;
      for (std::size_t k = 1; m % p == 0; ++k) {
        m /= p;
        acc += f.coefficient(k) * out.values[m];
      }
      out.values[n] = acc;
    }
    if (q0 != Rational(1)) {
      for (std::uint64_t n = 1; n <= N; ++n) {
        if (n % p != 0) out.values[n] *= q0;
      }
    }
  }
  return out;
}

double zeta_factor_estimate(const FrobenianFamily& family, double s, std::uint64_t prime_bound) {
  auto pole = aq_bq(family);
  if (pole.a && s <= 1.0 / static_cast<double>(*pole.a)) throw ValidationError("s is not right of the pole");
  internal::Classifier classify(family);
  const auto reg = internal::regularizer(family);
  double total = 0.0;
  for (auto p : primes_up_to(prime_bound)) total += internal::log_local(classify.at(p), p, s, reg);
  return std::exp(total);
}

}  // namespace malle::reference

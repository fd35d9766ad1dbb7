#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "malle/dirichlet.hpp"
#include "malle/error.hpp"

namespace malle::internal {

// Prime -> Euler factor lookup with the residue table precomputed.
class Classifier {
 public:
  explicit Classifier(const FrobenianFamily& family) : family_(family) {
    if (family.modulus > 0) {
      residue_class_.assign(family.modulus, -1);
      for (std::size_t i = 0; i < family.classes.size(); ++i) {
        for (auto r : family.classes[i].residues) residue_class_[r % family.modulus] = static_cast<int>(i);
      }
    }
  }

  const EulerFactor& at(std::uint64_t p) const {
    if (!family_.overrides.empty()) {
      auto it = family_.overrides.find(p);
      if (it != family_.overrides.end()) return it->second;
    }
    if (family_.modulus > 0) {
      int c = residue_class_[p % family_.modulus];
      if (c >= 0) return family_.classes[static_cast<std::size_t>(c)].factor;
    } else if (family_.classes.size() == 1) {
      return family_.classes.front().factor;
    }
    throw ValidationError("prime " + std::to_string(p) + " has no Frobenius class; supply an override");
  }

 private:
  const FrobenianFamily& family_;
  std::vector<int> residue_class_;
};

// Regularization exponents for the zeta-factored product.
struct Regularizer {
  double a = 0.0;  // 0 when a = infinity
  double b = 0.0;
};

inline Regularizer regularizer(const FrobenianFamily& family) {
  auto pole = aq_bq(family);
  if (!pole.a) return {};
  return {static_cast<double>(*pole.a), pole.b.to_double()};
}

// log Q_p(p^-s) + b log(1 - p^-as); -inf if the local factor vanishes.
inline double log_local(const EulerFactor& f, double p, double s, const Regularizer& r) {
  const double q = f.evaluate(std::pow(p, -s));
  if (q <= 0.0) return -INFINITY;
  double term = std::log(q);
  if (r.a > 0.0 && r.b != 0.0) term += r.b * std::log1p(-std::pow(p, -r.a * s));
  return term;
}

inline void check_expand_bounds(std::uint64_t prime_bound, std::uint64_t coeff_bound, std::uint64_t cap) {
  if (coeff_bound == 0) throw ValidationError("coefficient bound must be positive");
  if (coeff_bound > cap) {
    throw CapExceeded("coefficient bound " + std::to_string(coeff_bound) + " exceeds the expansion cap " +
                      std::to_string(cap));
  }
  (void)prime_bound;
}

// Product of override constant terms over override primes p <= P with
// p > N (those never divide an index).
inline Rational distant_override_constant(const FrobenianFamily& family, std::uint64_t prime_bound,
                                          std::uint64_t coeff_bound) {
  Rational c(1);
  for (const auto& [p, f] : family.overrides) {
    if (p <= prime_bound && p > coeff_bound) c *= f.constant();
  }
  return c;
}

}  // namespace malle::internal

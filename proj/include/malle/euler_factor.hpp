#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "malle/rational.hpp"

namespace malle {

// Polynomial in x = p^-s with exact nonnegative coefficients. Only nonzero
// coefficients are stored.
class EulerFactor {
 public:
  EulerFactor() = default;
  explicit EulerFactor(std::map<std::size_t, Rational> coefficients);
  static EulerFactor one() { return EulerFactor({{0, Rational(1)}}); }

  const std::map<std::size_t, Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t k) const;
  Rational constant() const { return coefficient(0); }
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
  // Smallest k > 0 with a nonzero coefficient.
  std::optional<std::size_t> least_positive_exponent() const;
  Rational coefficient_sum() const;
  bool is_constant() const { return !least_positive_exponent().has_value(); }

  void add(std::size_t k, const Rational& c);
  double evaluate(double x) const;

  // "1 + 3x^2"
  std::string str() const;

  friend bool operator==(const EulerFactor&, const EulerFactor&) = default;

 private:
  std::map<std::size_t, Rational> coeffs_;
};

}  // namespace malle

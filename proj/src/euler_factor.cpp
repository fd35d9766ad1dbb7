#include "malle/euler_factor.hpp"

#include <cmath>

#include "malle/error.hpp"

namespace malle {

EulerFactor::EulerFactor(std::map<std::size_t, Rational> coefficients) {
  for (auto& [k, c] : coefficients) add(k, c);
}

Rational EulerFactor::coefficient(std::size_t k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

std::optional<std::size_t> EulerFactor::least_positive_exponent() const {
  auto it = coeffs_.upper_bound(0);
  if (it == coeffs_.end()) return std::nullopt;
  return it->first;
}

Rational EulerFactor::coefficient_sum() const {
  Rational sum;
  for (const auto& [k, c] : coeffs_) sum += c;
  return sum;
}

void EulerFactor::add(std::size_t k, const Rational& c) {
  Rational next = coefficient(k) + c;
  if (next < Rational(0)) throw ValidationError("Euler factor coefficients must be nonnegative");
  if (next.is_zero()) {
    coeffs_.erase(k);
  } else {
    coeffs_[k] = next;
  }
}

double EulerFactor::evaluate(double x) const {
  double sum = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    sum += it->second.to_double() * std::pow(x, static_cast<double>(it->first));
  }
  return sum;
}

std::string EulerFactor::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : coeffs_) {
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += c.str();
      continue;
    }
    if (c != Rational(1)) out += c.is_integer() ? c.str() : "(" + c.str() + ")";
    out += "x";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace malle

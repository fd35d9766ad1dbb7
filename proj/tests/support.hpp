#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "malle/selmer.hpp"

namespace malle::testing {

// Invariant factor lists of every abelian group of order <= max_order.
inline std::vector<std::vector<std::uint64_t>> abelian_shapes(std::uint64_t max_order) {
  std::vector<std::vector<std::uint64_t>> out{{}};
  std::vector<std::vector<std::uint64_t>> frontier{{}};
  while (!frontier.empty()) {
    std::vector<std::vector<std::uint64_t>> next;
    for (const auto& s : frontier) {
      std::uint64_t order = 1;
      for (auto d : s) order *= d;
      const std::uint64_t last = s.empty() ? 1 : s.back();
      for (std::uint64_t d = std::max<std::uint64_t>(2, last); order * d <= max_order; d += last) {
        if (d % last != 0) continue;
        auto t = s;
        t.push_back(d);
        out.push_back(t);
        next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// A perfect pairing A x A -> Z/exp(A) with random unit diagonal and random
// compatible off-diagonal entries, resampled until perfect.
inline Pairing random_perfect_pairing(std::mt19937_64& rng, const std::vector<std::uint64_t>& shape) {
  FiniteAbelianGroup A(shape);
  const std::uint64_t n = A.exponent();
  for (;;) {
    std::vector<std::vector<std::uint64_t>> m(shape.size(), std::vector<std::uint64_t>(shape.size()));
    for (std::size_t i = 0; i < shape.size(); ++i) {
      for (std::size_t j = 0; j < shape.size(); ++j) {
        const std::uint64_t g = std::gcd(shape[i], shape[j]);
        std::uint64_t r = std::uniform_int_distribution<std::uint64_t>(0, g - 1)(rng);
        if (i == j) {
          while (std::gcd(r, g) != 1) r = std::uniform_int_distribution<std::uint64_t>(1, g - 1)(rng);
        }
        m[i][j] = (n / g) * r;
      }
    }
    Pairing P(A, A, n, m);
    if (P.is_perfect()) return P;
  }
}

inline ElementSet random_subgroup(std::mt19937_64& rng, const FiniteAbelianGroup& A, int max_generators = 2) {
  std::uniform_int_distribution<std::uint64_t> pick(0, A.order() - 1);
  std::vector<std::uint64_t> gens;
  const int k = std::uniform_int_distribution<int>(0, max_generators)(rng);
  for (int i = 0; i < k; ++i) gens.push_back(pick(rng));
  return A.generated(gens);
}

}  // namespace malle::testing

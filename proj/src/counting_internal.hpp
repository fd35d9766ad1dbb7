#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "malle/counting.hpp"

namespace malle::internal {

inline std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b, std::uint64_t limit) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r) || r > limit) return limit;
  return r;
}

inline std::uint64_t pow_sat(std::uint64_t p, std::size_t k, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k && r < limit; ++i) r = mul_sat(r, p, limit);
  return r;
}

struct Choice {
  std::uint64_t weight;  // p^exponent, always < bound
  std::uint64_t count;
};

// Local choices at every prime that can ramify below `bound`, for homs
// into one subgroup S of T. The product over chosen primes of the weights
// is the ordering value of the hom.
struct SearchSpace {
  std::uint64_t bound = 1;
  std::int64_t sign = 1;  // Moebius weight of S in the sieve
  std::vector<std::uint32_t> primes;
  std::vector<std::uint64_t> min_weight;  // lower bound on any nontrivial weight at primes[j]
  std::vector<std::size_t> offset;        // choices of primes[j] are [offset[j], offset[j+1])
  std::vector<Choice> choices;
};

// One space for all homs, or one per subgroup with nonzero Moebius weight.
std::vector<SearchSpace> build_spaces(const FiniteAbelianGroup& T, Ordering ordering, std::uint64_t bound,
                                      bool surjective_only, std::uint64_t prime_cap);

template <class Sink>
void dfs(const SearchSpace& s, std::size_t start, std::uint64_t value, std::uint64_t mult, Sink& sink) {
  sink(value, mult);
  for (std::size_t j = start; j < s.primes.size(); ++j) {
    if (mul_sat(value, s.min_weight[j], s.bound) >= s.bound) break;
    for (std::size_t c = s.offset[j]; c < s.offset[j + 1]; ++c) {
      const std::uint64_t w = mul_sat(value, s.choices[c].weight, s.bound);
      if (w < s.bound) dfs(s, j + 1, w, mult * s.choices[c].count, sink);
    }
  }
}

// Signed counts per grid bucket: bucket b holds values in [grid[b-1], grid[b]).
struct Buckets {
  const std::vector<std::uint64_t>* grid;
  std::vector<std::int64_t> cells;
  std::int64_t sign = 1;

  explicit Buckets(const std::vector<std::uint64_t>& g) : grid(&g), cells(g.size(), 0) {}
  void operator()(std::uint64_t value, std::uint64_t mult) {
    auto b = static_cast<std::size_t>(std::upper_bound(grid->begin(), grid->end(), value) - grid->begin());
    cells[b] += sign * static_cast<std::int64_t>(mult);
  }
};

void validate_count_input(const FiniteAbelianGroup& T, std::span<const std::uint64_t> grid,
                          const CountOptions& options);
CountSeries finish_series(const FiniteAbelianGroup& T, Ordering ordering, std::vector<std::uint64_t> grid,
                          const std::vector<std::int64_t>& cells, const CountOptions& options);

}  // namespace malle::internal

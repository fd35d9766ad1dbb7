#include "../counting_internal.hpp"
#include "malle/counting.hpp"
#include "malle/primes.hpp"

namespace malle::reference {

// Same search, one thread, straight from the root.
CountSeries count(const FiniteAbelianGroup& T, Ordering ordering, std::span<const std::uint64_t> grid,
                  const CountOptions& options) {
  internal::validate_count_input(T, grid, options);
  std::vector<std::uint64_t> g(grid.begin(), grid.end());
  internal::Buckets buckets(g);
  for (const auto& s : internal::build_spaces(T, ordering, g.back(), options.surjective_only, options.prime_cap)) {
    buckets.sign = s.sign;
    internal::dfs(s, 0, 1, 1, buckets);
  }
  return internal::finish_series(T, ordering, std::move(g), buckets.cells, options);
}

std::map<std::uint64_t, std::int64_t> enumerate_histogram(const FiniteAbelianGroup& T, Ordering ordering,
                                                          std::uint64_t bound, bool surjective_only) {
  // disc >= conductor; under ram the conductor can exceed the radical by
  // the wild part.
  std::uint64_t top = bound;
  if (ordering == Ordering::ram_pi) {
    for (std::uint64_t p = 2; p <= T.order(); ++p) {
      if (T.order() % p != 0 || !is_prime(p)) continue;
      for (std::uint64_t k = local_homs(T, p).front().k; k > 1; --k) top *= p;
    }
  }
  std::map<std::uint64_t, std::int64_t> hist;
  for (std::uint64_t m = 1; m < top; ++m) {
    for (const auto& h : homs_with_conductor(T, m, top)) {
      std::uint64_t v;
      if (ordering == Ordering::disc_pi) {
        auto d = discriminant_of(T, h);
        if (!d.value) continue;
        v = *d.value;
      } else {
        v = ramified_product(h);
      }
      if (v >= bound) continue;
      if (surjective_only && h.image(T).count() != T.order()) continue;
      hist[v] += 1;
    }
  }
  return hist;
}

}  // namespace malle::reference

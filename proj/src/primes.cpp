#include "malle/primes.hpp"

#include <limits>

#include "malle/error.hpp"

namespace malle {

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  if (n > std::numeric_limits<std::uint32_t>::max()) throw CapExceeded("prime bound above 2^32");
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  // Odd-only sieve: slot i stands for 2i + 1.
  std::vector<bool> composite(n / 2 + 1, false);
  out.push_back(2);
  for (std::uint64_t i = 1; 2 * i + 1 <= n; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= n; m += 2 * p) composite[m / 2] = true;
  }
  return out;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t n) {
  if (n > std::numeric_limits<std::uint32_t>::max()) throw CapExceeded("sieve bound above 2^32");
  std::vector<std::uint32_t> spf(n + 1, 0);
  std::vector<std::uint32_t> primes;
  // Linear sieve: each composite is struck once, by its smallest prime.
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (auto p : primes) {
      if (p > spf[i] || i * p > n) break;
      spf[i * p] = p;
    }
  }
  return spf;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace malle

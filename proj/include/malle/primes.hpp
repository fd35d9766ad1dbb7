#pragma once

#include <cstdint>
#include <vector>

namespace malle {

// Primes <= n in increasing order.
std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

// Smallest prime factor of every k <= n (spf[0] = spf[1] = 0).
std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t n);

bool is_prime(std::uint64_t n);

}  // namespace malle

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ncpx {

// Deterministic Miller-Rabin, valid over the whole 64-bit range.
bool is_prime(std::uint64_t n);

// Trial-division factorization as (prime, exponent) pairs, ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

// floor(sqrt(n)), exact.
std::uint64_t isqrt(std::uint64_t n);

}  // namespace ncpx

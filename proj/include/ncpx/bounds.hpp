#pragma once

#include <cstdint>

#include "ncpx/bigint.hpp"

namespace ncpx {

// (3/ln 3) ln n: no sum-product reaches n with fewer 1's.
double lower_bound(std::uint64_t n);

// (3/ln 2) ln n: the binary-expansion construction, valid for n >= 2.
double upper_bound(std::uint64_t n);

// Largest value reachable with n ones arranged as k summand groups that are
// multiplied together: floor(n/k) and floor(n/k)+1 raised to the exponents
// that split n as evenly as possible. 1 <= k <= n.
bigint mahler_popken_pnk(std::uint64_t n, std::uint64_t k);

// max over k of p_{n,k}: the largest number writable with exactly n ones.
bigint mahler_popken_max(std::uint64_t n);

// Selfridge's closed form for the same maximum: by m mod 3 the value is
// 2*3^(q-1), 3^q or 4*3^(q-1); equals mahler_popken_max(m) for m >= 2.
bigint selfridge_max(std::uint64_t m);

}  // namespace ncpx

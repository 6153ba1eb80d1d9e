#include "ncpx/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ncpx {

namespace {

using u64 = std::uint64_t;

bigint ipow(const bigint& base, u64 exp) {
    bigint r = 1, b = base;
    while (exp) {
        if (exp & 1)
            r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

}  // namespace

double lower_bound(std::uint64_t n) {
    if (n < 1)
        throw std::domain_error("lower_bound: n must be at least 1");
    return 3.0 / std::log(3.0) * std::log(static_cast<double>(n));
}

double upper_bound(std::uint64_t n) {
    if (n < 2)
        throw std::domain_error("upper_bound: stated for n >= 2 only");
    return 3.0 / std::log(2.0) * std::log(static_cast<double>(n));
}

bigint mahler_popken_pnk(std::uint64_t n, std::uint64_t k) {
    if (n < 1 || k < 1 || k > n)
        throw std::domain_error("mahler_popken_pnk: need 1 <= k <= n");
    const u64 q = n / k;
    // q^(k(q+1) - n) * (q+1)^(n - kq); the exponents split n as evenly as
    // possible into k groups of q or q+1 ones.
    const u64 e1 = k * (q + 1) - n;
    const u64 e2 = n - k * q;
    return ipow(bigint(q), e1) * ipow(bigint(q + 1), e2);
}

bigint mahler_popken_max(std::uint64_t n) {
    if (n < 1)
        throw std::domain_error("mahler_popken_max: n must be at least 1");
    bigint best = 0;
    for (u64 k = 1; k <= n; ++k) {
        bigint v = mahler_popken_pnk(n, k);
        if (v > best)
            best = v;
    }
    return best;
}

bigint selfridge_max(std::uint64_t m) {
    if (m < 1)
        throw std::domain_error("selfridge_max: m must be at least 1");
    if (m == 1)
        return 1;
    switch (m % 3) {
        case 0:
            return ipow(3, m / 3);
        case 1:
            return 4 * ipow(3, (m - 1) / 3 - 1);
        default:  // m % 3 == 2
            return 2 * ipow(3, (m + 1) / 3 - 1);
    }
}

}  // namespace ncpx

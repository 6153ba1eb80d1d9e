#include "ncpx/primes.hpp"

#include <cmath>

namespace ncpx {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

bool strong_probable_prime(u64 n, u64 a, u64 d, int s) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is deterministic for every 64-bit n.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (!strong_probable_prime(n, a, d, s))
            return false;
    return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 d = 2; d <= n / d; ++d) {
        if (n % d == 0) {
            unsigned e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

std::uint64_t isqrt(std::uint64_t n) {
    if (n == 0)
        return 0;
    u64 s = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (s > 0 && static_cast<u128>(s) * s > n)
        --s;
    while (static_cast<u128>(s + 1) * (s + 1) <= n)
        ++s;
    return s;
}

}  // namespace ncpx

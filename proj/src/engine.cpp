#include "ncpx/engine.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ncpx/errors.hpp"
#include "ncpx/primes.hpp"

namespace ncpx {

namespace {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

const double kLn3Over3 = std::log(3.0) / 3.0;

// ||1||..||6||; the sum-loop cutoff formula is not real there, so they are
// pinned directly. Index 0 unused.
constexpr std::array<u8, 7> kSeed{0, 1, 2, 3, 4, 5, 5};

// kCubeBound[c] is the smallest m with m^3 >= 3^c, exact. Lets the cutoff
// certificate compare k(n-k) against 3^((1+prev)/3) in pure integers:
// k(n-k) >= 3^((1+prev)/3)  <=>  (k(n-k))^3 >= 3^(1+prev)  <=>  k(n-k) >= bound.
// c = 243 is the first entry that would overflow 128 bits; no product of two
// 64-bit halves can reach those, so larger c simply cannot be certified.
constexpr int kCubeBoundSize = 243;

std::array<u128, kCubeBoundSize> make_cube_bounds() {
    namespace mp = boost::multiprecision;
    std::array<u128, kCubeBoundSize> out{};
    for (int c = 1; c < kCubeBoundSize; ++c) {
        const mp::cpp_int target = mp::pow(mp::cpp_int(3), c);
        mp::cpp_int lo = 1, hi = mp::cpp_int(1) << 128;
        while (lo < hi) {
            const mp::cpp_int mid = (lo + hi) / 2;
            if (mid * mid * mid >= target)
                hi = mid;
            else
                lo = mid + 1;
        }
        const u64 low_half = static_cast<u64>(lo & 0xFFFFFFFFFFFFFFFFull);
        const u64 high_half = static_cast<u64>(lo >> 64);
        out[c] = (static_cast<u128>(high_half) << 64) | low_half;
    }
    return out;
}

const std::array<u128, kCubeBoundSize>& cube_bounds() {
    static const auto table = make_cube_bounds();
    return table;
}

// Closed-form cutoff plus the exact certificate. prev = ||n-1||, n >= 7.
inline u64 cutoff_for(u64 n, unsigned prev) {
    const u64 half = n / 2;
    const double r = kLn3Over3 * (1.0 + prev);
    const double x = 4.0 * std::exp(r - 2.0 * std::log(static_cast<double>(n)));
    u64 kmax;
    if (!(x < 1.0)) {
        kmax = half;  // square-root argument not strictly positive
    } else {
        // (n/2)(1 - sqrt(1-x)) without the cancellation when x is tiny
        const double root = 0.5 * static_cast<double>(n) * x / (1.0 + std::sqrt(1.0 - x));
        kmax = static_cast<u64>(0.5 + root);  // floor
        kmax = std::clamp<u64>(kmax, 1, half);
    }
    while (kmax < half && !verify_kmax_safe(n, kmax, prev))
        ++kmax;
    return kmax;
}

// One entry of the pruned recurrence. v is the 0-based payload (v[i] = ||i+1||)
// with everything below n final. Returns ||n|| and the cutoff used.
inline int pruned_entry(const u8* v, u64 n, u64& kmax_used, u64& sum_iters, u64& div_iters) {
    const unsigned prev = v[n - 2];
    int best = 1 + static_cast<int>(prev);  // the k = 1 split
    const u64 kmax = cutoff_for(n, prev);
    kmax_used = kmax;
    for (u64 k = 2; k <= kmax; ++k)
        best = std::min<int>(best, v[k - 1] + v[n - k - 1]);
    if (kmax >= 2)
        sum_iters += kmax - 1;

    const u64 s = isqrt(n);
    if (n <= 0xFFFFFFFFull) {
        const u32 nn = static_cast<u32>(n);
        const u32 ss = static_cast<u32>(s);
        if (nn & 1u) {
            // odd n has odd divisors only
            for (u32 d = 3; d <= ss; d += 2)
                if (nn % d == 0)
                    best = std::min<int>(best, v[d - 1] + v[nn / d - 1]);
            div_iters += ss >= 3 ? (ss - 3) / 2 + 1 : 0;
        } else {
            for (u32 d = 2; d <= ss; ++d)
                if (nn % d == 0)
                    best = std::min<int>(best, v[d - 1] + v[nn / d - 1]);
            div_iters += ss >= 2 ? ss - 1 : 0;
        }
    } else {
        if (n & 1u) {
            for (u64 d = 3; d <= s; d += 2)
                if (n % d == 0)
                    best = std::min<int>(best, v[d - 1] + v[n / d - 1]);
            div_iters += s >= 3 ? (s - 3) / 2 + 1 : 0;
        } else {
            for (u64 d = 2; d <= s; ++d)
                if (n % d == 0)
                    best = std::min<int>(best, v[d - 1] + v[n / d - 1]);
            div_iters += s >= 2 ? s - 1 : 0;
        }
    }
    return best;
}

// Runs the recurrence from entry cursor+1 through limit. values.size() == limit
// and entries 1..cursor are final.
ComplexityTable run_build(u64 limit, std::vector<u8> values, u64 cursor, const BuildOptions& opt) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const auto elapsed = [&] {
        return std::chrono::duration<double>(clock::now() - t0).count();
    };

    for (u64 n = cursor + 1; n <= limit && n <= 6; ++n)
        values[n - 1] = kSeed[n];

    int champion = 0;
    for (u64 i = 1; i <= std::min<u64>(cursor, limit); ++i)
        champion = std::max<int>(champion, values[i - 1]);
    champion = std::max(champion, 5);  // seed block maximum

    u64 sum_iters = 0, div_iters = 0, max_kmax = 0;
    u8* const v = values.data();
    const u64 start = std::max<u64>(cursor, 6) + 1;
    for (u64 n = start; n <= limit; ++n) {
        u64 kmax = 0;
        const int value = pruned_entry(v, n, kmax, sum_iters, div_iters);
        v[n - 1] = static_cast<u8>(value);
        max_kmax = std::max(max_kmax, kmax);

        if (value > champion) {
            champion = value;
            if (opt.champion)
                opt.champion({n, kmax, champion, champion / std::log(static_cast<double>(n))});
        }
        if (opt.progress && (n & 0xFFFFFu) == 0)
            opt.progress(n, elapsed(), max_kmax);
        if (opt.checkpoint && opt.checkpoint_interval != 0 && n % opt.checkpoint_interval == 0 &&
            n < limit)
            opt.checkpoint(std::span<const u8>(v, n), n);
    }

    if (opt.stats) {
        opt.stats->sum_loop_iterations = sum_iters;
        opt.stats->divisor_loop_iterations = div_iters;
        opt.stats->max_kmax = max_kmax;
        opt.stats->elapsed_seconds = elapsed();
    }
    return ComplexityTable(std::move(values));
}

void check_budget(u64 limit, const BuildOptions& opt) {
    if (limit == 0)
        throw std::domain_error("build_table: limit must be at least 1");
    if (limit > opt.memory_budget_bytes)
        throw resource_error("build_table: a table of " + std::to_string(limit) +
                             " bytes exceeds the memory budget of " +
                             std::to_string(opt.memory_budget_bytes) + " bytes");
}

}  // namespace

std::uint8_t ComplexityTable::at(std::uint64_t n) const {
    if (n < 1 || n > values_.size())
        throw std::out_of_range("ComplexityTable: index " + std::to_string(n) +
                                " outside 1.." + std::to_string(values_.size()));
    return values_[n - 1];
}

std::uint8_t complexity_of(const ComplexityTable& table, std::uint64_t n) {
    return table.at(n);
}

std::uint64_t compute_kmax(std::uint64_t n, unsigned compl_prev) {
    if (n < 7)
        throw std::domain_error("compute_kmax: defined for n >= 7 only");
    if (compl_prev < 1)
        throw std::domain_error("compute_kmax: compl_prev must be at least 1");
    return cutoff_for(n, compl_prev);
}

bool verify_kmax_safe(std::uint64_t n, std::uint64_t kmax, unsigned compl_prev) {
    const u64 half = n / 2;
    if (kmax >= half)
        return true;  // nothing is cut
    const unsigned c = compl_prev + 1;
    if (c >= kCubeBoundSize)
        return false;  // beyond what two 64-bit factors can certify
    const u64 k = kmax + 1;
    const u128 prod = static_cast<u128>(k) * (n - k);
    return prod >= cube_bounds()[c];
}

std::uint8_t recompute_entry(std::span<const std::uint8_t> payload, std::uint64_t n,
                             std::uint64_t* kmax_used) {
    if (n == 0)
        throw std::domain_error("recompute_entry: n must be at least 1");
    if (n <= 6) {
        if (kmax_used)
            *kmax_used = 0;
        return kSeed[n];
    }
    if (payload.size() < n - 1)
        throw std::out_of_range("recompute_entry: payload holds fewer than n-1 entries");
    u64 kmax = 0, si = 0, di = 0;
    const int value = pruned_entry(payload.data(), n, kmax, si, di);
    if (kmax_used)
        *kmax_used = kmax;
    return static_cast<u8>(value);
}

ComplexityTable build_table(std::uint64_t limit, const BuildOptions& options) {
    check_budget(limit, options);
    std::vector<u8> values(limit);
    return run_build(limit, std::move(values), 0, options);
}

ComplexityTable build_table(std::uint64_t limit) {
    return build_table(limit, BuildOptions{});
}

ComplexityTable resume_table(std::uint64_t limit, std::vector<std::uint8_t> prefix,
                             const BuildOptions& options, std::uint64_t verify_window) {
    check_budget(limit, options);
    if (prefix.size() > limit)
        throw std::invalid_argument("resume_table: prefix is longer than the requested limit");

    // Recompute the tail of the prefix before trusting it; a stale or torn
    // checkpoint shows up as a mismatch here.
    const u64 cursor = prefix.size();
    const u64 lo = cursor > verify_window ? cursor - verify_window + 1 : 1;
    for (u64 n = lo; n <= cursor; ++n) {
        const u8 expect = prefix[n - 1];
        const u8 got = recompute_entry(std::span<const u8>(prefix.data(), cursor), n);
        if (got != expect)
            throw integrity_error("resume_table: entry " + std::to_string(n) +
                                  " disagrees with recomputation (checkpoint corrupt)");
    }

    prefix.resize(limit);
    return run_build(limit, std::move(prefix), cursor, options);
}

ComplexityTable brute_force_table(std::uint64_t limit, std::uint64_t cap) {
    if (limit == 0)
        throw std::domain_error("brute_force_table: limit must be at least 1");
    if (limit > cap)
        throw resource_error("brute_force_table: limit " + std::to_string(limit) +
                             " exceeds the cap of " + std::to_string(cap) +
                             " (quadratic cost)");
    std::vector<u8> values(limit);
    values[0] = 1;
    for (u64 n = 2; n <= limit; ++n) {
        int best = 255;
        for (u64 k = 1; k <= n / 2; ++k)
            best = std::min<int>(best, values[k - 1] + values[n - k - 1]);
        const u64 s = isqrt(n);
        for (u64 d = 2; d <= s; ++d)
            if (n % d == 0)
                best = std::min<int>(best, values[d - 1] + values[n / d - 1]);
        values[n - 1] = static_cast<u8>(best);
    }
    return ComplexityTable(std::move(values));
}

}  // namespace ncpx

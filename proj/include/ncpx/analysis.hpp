#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ncpx/bigint.hpp"
#include "ncpx/table.hpp"

namespace ncpx {

// One row of the highly-complex record table. first is the smallest n with
// ||n|| = m; kmax_at_first the sum-loop cutoff in effect when the builder
// reached it (defined from n = 7 on); max_elem the largest member of the
// complexity class by the closed form; class_size is counted only when the
// whole class fits inside the table.
struct HighlyComplexRecord {
    int m = 0;
    std::uint64_t first = 0;
    std::optional<std::uint64_t> kmax_at_first;
    std::optional<double> ratio;  // m / ln(first), defined for m >= 2
    bigint max_elem;
    std::optional<std::uint64_t> class_size;
};

std::vector<HighlyComplexRecord> highly_complex_records(const ComplexityTable& table);

// (a, b) with ||2^a 3^b|| != 2a + 3b, excluding (0, 0). Expected empty.
std::vector<std::pair<unsigned, unsigned>> q1_scan(const ComplexityTable& table);

// Primes p with ||p|| != 1 + ||p-1||.
std::vector<std::uint64_t> q2_scan(const ComplexityTable& table);

// Primes p with 3 + ||p|| > 1 + ||3p-1||; scans p with 3p-1 inside the table.
std::vector<std::uint64_t> q3_scan(const ComplexityTable& table);

struct Q4Result {
    std::uint64_t left_smaller = 0;   // 2 + ||p|| < 1 + ||2p-1||
    std::uint64_t right_smaller = 0;  // 1 + ||2p-1|| < 2 + ||p||
    std::uint64_t equal = 0;
    std::vector<std::uint64_t> violations;  // primes with ||2p|| != min of the two
};
Q4Result q4_classify(const ComplexityTable& table);

// (n, k): the best sum split of n is strictly better than the k = 1 split,
// with k the smallest witness. Every hit is checked against the identity
// ||k|| + ||n-k|| == ||n-1||; a counterexample throws. ||n|| itself can sit
// below both when a product split wins (it does at the first witness).
std::vector<std::pair<std::uint64_t, std::uint64_t>> q5_sum_only_cases(const ComplexityTable& table);

// Statistics of c(n) solving ||n|| = (3 + c) ln n / ln 3, over n = 2..limit.
struct CStats {
    std::uint64_t range_end = 0;
    double mean_c = 0.0;
    double stddev_c = 0.0;       // population standard deviation
    double freq_above_03 = 0.0;  // fraction of n with c(n) > 0.3
};
CStats q6_stats(const ComplexityTable& table);

// k -> first n with ||n-1|| - ||n|| = k, k >= 0. The achieved k must come out
// contiguous from 0; a gap throws invariant_error.
std::map<int, std::uint64_t> drop_records(const ComplexityTable& table);

// Sum of ||p^a|| over the prime factorization of n, minus ||n||. Nonnegative,
// zero on prime powers. Defined for n >= 2.
struct AdditiveExcessRecord {
    std::uint64_t n = 0;
    int excess = 0;
};
AdditiveExcessRecord additive_excess(const ComplexityTable& table, std::uint64_t n);

// k -> first n with excess k, for k >= 1.
std::map<int, std::uint64_t> additive_excess_records(const ComplexityTable& table);

// cr = 1 - n / M where M is the largest number sharing n's complexity.
// Always in [0, 1); zero exactly when n is that largest number.
struct CrStat {
    std::uint64_t n = 0;
    int complexity = 0;
    double cr = 0.0;
};
CrStat cr_of(const ComplexityTable& table, std::uint64_t n);

// Equal-width bin counts of cr(n) over [0, 1) for n = 1..limit.
std::vector<std::uint64_t> cr_histogram(const ComplexityTable& table, unsigned bins);

// (p, k) with ||p^k|| < k ||p||, p prime, k >= 2, p^k <= limit.
std::vector<std::pair<std::uint64_t, unsigned>> prime_power_scan(const ComplexityTable& table);

struct PredictionInterval {
    double low = 0.0;
    double high = 0.0;
};

// Ordinary least squares of ln(first) against m over records with
// m >= fit_min_m, evaluated at target_m and bracketed by one residual
// standard error. Needs at least 10 records.
PredictionInterval predict_first_occurrence(const std::vector<HighlyComplexRecord>& records,
                                            int target_m, int fit_min_m = 10);

}  // namespace ncpx

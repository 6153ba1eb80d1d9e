#include "ncpx/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ncpx/bounds.hpp"
#include "ncpx/engine.hpp"
#include "ncpx/errors.hpp"
#include "ncpx/primes.hpp"

namespace ncpx {

namespace {

using u64 = std::uint64_t;

const double kLn3 = std::log(3.0);

// Sum of ||p^a|| over the factorization of n; every prime power divides n and
// therefore sits inside the table.
int factored_cost(const ComplexityTable& t, u64 n) {
    int sum = 0;
    u64 m = n;
    for (u64 d = 2; d <= m / d; ++d) {
        if (m % d == 0) {
            u64 pk = 1;
            while (m % d == 0) {
                m /= d;
                pk *= d;
            }
            sum += t[pk];
        }
    }
    if (m > 1)
        sum += t[m];
    return sum;
}

}  // namespace

std::vector<HighlyComplexRecord> highly_complex_records(const ComplexityTable& table) {
    const u64 limit = table.limit();
    std::array<u64, 256> class_count{};
    for (u64 n = 1; n <= limit; ++n)
        ++class_count[table[n]];

    std::vector<HighlyComplexRecord> out;
    int best = 0;
    for (u64 n = 1; n <= limit; ++n) {
        if (table[n] <= best)
            continue;
        best = table[n];  // ||n|| <= 1 + ||n-1||, so no m is skipped
        HighlyComplexRecord rec;
        rec.m = best;
        rec.first = n;
        if (n >= 7)
            rec.kmax_at_first = compute_kmax(n, table[n - 1]);
        if (rec.m >= 2)
            rec.ratio = rec.m / std::log(static_cast<double>(n));
        rec.max_elem = selfridge_max(static_cast<u64>(rec.m));
        if (rec.max_elem <= limit)
            rec.class_size = class_count[static_cast<std::size_t>(rec.m)];
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<std::pair<unsigned, unsigned>> q1_scan(const ComplexityTable& table) {
    const u64 limit = table.limit();
    std::vector<std::pair<unsigned, unsigned>> violations;
    for (u64 pa = 1, a = 0; pa <= limit; pa *= 2, ++a) {
        for (u64 v = pa, b = 0; v <= limit; v *= 3, ++b) {
            if (v > 1 && table[v] != 2 * a + 3 * b)
                violations.emplace_back(static_cast<unsigned>(a), static_cast<unsigned>(b));
            if (v > limit / 3)
                break;
        }
        if (pa > limit / 2)
            break;
    }
    return violations;
}

std::vector<std::uint64_t> q2_scan(const ComplexityTable& table) {
    const u64 limit = table.limit();
    std::vector<u64> exceptions;
    for (u64 p = 2; p <= limit; ++p) {
        if (p > 3 && p % 2 == 0)
            continue;
        if (!is_prime(p))
            continue;
        if (table[p] != 1 + table[p - 1])
            exceptions.push_back(p);
    }
    return exceptions;
}

std::vector<std::uint64_t> q3_scan(const ComplexityTable& table) {
    const u64 limit = table.limit();
    std::vector<u64> exceptions;
    for (u64 p = 2; 3 * p - 1 <= limit; ++p) {
        if (p > 3 && p % 2 == 0)
            continue;
        if (!is_prime(p))
            continue;
        if (3 + table[p] > 1 + table[3 * p - 1])
            exceptions.push_back(p);
    }
    return exceptions;
}

Q4Result q4_classify(const ComplexityTable& table) {
    const u64 limit = table.limit();
    Q4Result res;
    for (u64 p = 2; 2 * p <= limit; ++p) {
        if (p > 3 && p % 2 == 0)
            continue;
        if (!is_prime(p))
            continue;
        const int left = 2 + table[p];
        const int right = 1 + table[2 * p - 1];
        if (left < right)
            ++res.left_smaller;
        else if (right < left)
            ++res.right_smaller;
        else
            ++res.equal;
        if (table[2 * p] != std::min(left, right))
            res.violations.push_back(p);
    }
    return res;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> q5_sum_only_cases(
    const ComplexityTable& table) {
    const u64 limit = table.limit();
    std::vector<std::pair<u64, u64>> cases;
    for (u64 n = 7; n <= limit; ++n) {
        const unsigned prev = table[n - 1];
        const int k1 = 1 + static_cast<int>(prev);
        // any split beating the k = 1 candidate lies inside the cutoff
        const u64 kmax = compute_kmax(n, prev);
        int best = k1;
        u64 best_k = 1;
        for (u64 k = 2; k <= kmax; ++k) {
            const int c = table[k] + table[n - k];
            if (c < best) {
                best = c;
                best_k = k;
            }
        }
        if (best >= k1)
            continue;
        // The sum minimum sits exactly one below the k = 1 candidate in every
        // known case (a product may still undercut both and set ||n||).
        if (best != static_cast<int>(prev))
            throw invariant_error("q5_sum_only_cases: n = " + std::to_string(n) +
                                  " breaks ||k|| + ||n-k|| = ||n-1||");
        cases.emplace_back(n, best_k);
    }
    return cases;
}

CStats q6_stats(const ComplexityTable& table) {
    const u64 limit = table.limit();
    if (limit < 2)
        throw std::domain_error("q6_stats: needs a table with limit >= 2");
    CStats st;
    st.range_end = limit;
    double mean = 0.0, m2 = 0.0;
    u64 count = 0, above = 0;
    for (u64 n = 2; n <= limit; ++n) {
        const double c = table[n] * kLn3 / std::log(static_cast<double>(n)) - 3.0;
        ++count;
        const double delta = c - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (c - mean);
        if (c > 0.3)
            ++above;
    }
    st.mean_c = mean;
    st.stddev_c = std::sqrt(m2 / static_cast<double>(count));
    st.freq_above_03 = static_cast<double>(above) / static_cast<double>(count);
    return st;
}

std::map<int, std::uint64_t> drop_records(const ComplexityTable& table) {
    const u64 limit = table.limit();
    if (limit < 2)
        throw std::domain_error("drop_records: needs a table with limit >= 2");
    std::map<int, u64> firsts;
    for (u64 n = 2; n <= limit; ++n) {
        const int drop = static_cast<int>(table[n - 1]) - static_cast<int>(table[n]);
        if (drop >= 0)
            firsts.emplace(drop, n);  // keeps the first witness
    }
    int expected = 0;
    for (const auto& [k, n] : firsts) {
        if (k != expected)
            throw invariant_error("drop_records: gap in achieved drops at k = " +
                                  std::to_string(expected));
        ++expected;
    }
    return firsts;
}

AdditiveExcessRecord additive_excess(const ComplexityTable& table, std::uint64_t n) {
    if (n < 2)
        throw std::domain_error("additive_excess: defined for n >= 2");
    if (n > table.limit())
        throw std::out_of_range("additive_excess: n outside the table");
    return {n, factored_cost(table, n) - table[n]};
}

std::map<int, std::uint64_t> additive_excess_records(const ComplexityTable& table) {
    std::map<int, u64> firsts;
    const u64 limit = table.limit();
    for (u64 n = 2; n <= limit; ++n) {
        const int excess = factored_cost(table, n) - table[n];
        if (excess >= 1)
            firsts.emplace(excess, n);
    }
    return firsts;
}

CrStat cr_of(const ComplexityTable& table, std::uint64_t n) {
    const int a = table.at(n);
    const bigint m = selfridge_max(static_cast<u64>(a));
    double cr = 0.0;
    if (bigint(n) != m)
        cr = 1.0 - static_cast<double>(n) / m.convert_to<double>();
    return {n, a, cr};
}

std::vector<std::uint64_t> cr_histogram(const ComplexityTable& table, unsigned bins) {
    if (bins < 1)
        throw std::domain_error("cr_histogram: need at least one bin");
    // M by complexity class, as doubles; class values above 255 cannot occur
    std::array<double, 256> max_elem{};
    for (int m = 1; m < 256; ++m)
        max_elem[m] = selfridge_max(static_cast<u64>(m)).convert_to<double>();

    std::vector<u64> counts(bins, 0);
    const u64 limit = table.limit();
    for (u64 n = 1; n <= limit; ++n) {
        const double cr = 1.0 - static_cast<double>(n) / max_elem[table[n]];
        auto bin = static_cast<std::size_t>(cr * bins);
        if (bin >= bins)
            bin = bins - 1;  // cr < 1 mathematically; guards rounding
        ++counts[bin];
    }
    return counts;
}

std::vector<std::pair<std::uint64_t, unsigned>> prime_power_scan(const ComplexityTable& table) {
    const u64 limit = table.limit();
    std::vector<std::pair<u64, unsigned>> hits;
    for (u64 p = 2; p * p <= limit; ++p) {
        if (!is_prime(p))
            continue;
        const unsigned cost = table[p];
        u64 pk = p * p;
        unsigned k = 2;
        while (true) {
            if (table[pk] < k * cost)
                hits.emplace_back(p, k);
            if (pk > limit / p)
                break;
            pk *= p;
            ++k;
        }
    }
    return hits;
}

PredictionInterval predict_first_occurrence(const std::vector<HighlyComplexRecord>& records,
                                            int target_m, int fit_min_m) {
    if (records.size() < 10)
        throw std::domain_error("predict_first_occurrence: need at least 10 records");
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : records)
        if (r.m >= fit_min_m && r.first >= 1)
            pts.emplace_back(static_cast<double>(r.m), std::log(static_cast<double>(r.first)));
    if (pts.size() < 3)
        throw std::domain_error("predict_first_occurrence: too few records in the fit window");

    double mx = 0, my = 0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    double rss = 0;
    for (const auto& [x, y] : pts) {
        const double r = y - (intercept + slope * x);
        rss += r * r;
    }
    const double dof = static_cast<double>(pts.size()) - 2.0;
    const double se = dof > 0 ? std::sqrt(rss / dof) : 0.0;

    const double predicted = intercept + slope * target_m;
    return {std::exp(predicted - se), std::exp(predicted + se)};
}

}  // namespace ncpx

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ncpx/table.hpp"

namespace ncpx {

struct BuildStats {
    std::uint64_t sum_loop_iterations = 0;  // executions of the k >= 2 sum-split body
    std::uint64_t divisor_loop_iterations = 0;
    std::uint64_t max_kmax = 0;
    double elapsed_seconds = 0.0;
};

// A new running maximum of ||n||, reported as the build passes it.
struct ChampionRecord {
    std::uint64_t n = 0;
    std::uint64_t kmax = 0;  // sum-loop cutoff in effect at n
    int complexity = 0;
    double ratio = 0.0;      // complexity / ln n
};

struct BuildOptions {
    // One byte per entry; checked before the table is allocated.
    std::uint64_t memory_budget_bytes = std::uint64_t{2} << 30;

    // Invoked every 2^20 entries with (n, seconds elapsed, max kMax so far).
    std::function<void(std::uint64_t n, double elapsed_seconds, std::uint64_t max_kmax)> progress;

    // Invoked whenever ||n|| exceeds every earlier value (n >= 7; the seed
    // block's running maximum of 5 is the baseline).
    std::function<void(const ChampionRecord&)> champion;

    // Invoked with the finalized prefix every checkpoint_interval entries.
    std::function<void(std::span<const std::uint8_t> payload, std::uint64_t cursor)> checkpoint;
    std::uint64_t checkpoint_interval = std::uint64_t{1} << 24;

    BuildStats* stats = nullptr;  // filled on completion when non-null
};

// Builds the complexity table for 1..limit: seeds 1..6, then for each n the
// sum loop over k = 1..kMax and the trial-division product loop over
// d = 2..sqrt(n). limit = 0 is a domain error; a table that would not fit
// the memory budget is a resource error, raised before allocation.
ComplexityTable build_table(std::uint64_t limit, const BuildOptions& options);
ComplexityTable build_table(std::uint64_t limit);

// Continues a build whose first prefix.size() entries are final. The trailing
// verify_window entries of the prefix are recomputed from the entries below
// them and compared before any new work; a mismatch throws integrity_error.
ComplexityTable resume_table(std::uint64_t limit, std::vector<std::uint8_t> prefix,
                             const BuildOptions& options = {},
                             std::uint64_t verify_window = std::uint64_t{1} << 20);

// Largest sum-split index worth testing for n, given compl_prev = ||n-1||.
// Splits k > kMax satisfy (3/ln 3)(ln k + ln(n-k)) >= 1 + ||n-1|| and can
// never improve on the k = 1 candidate, so the sum loop may stop there.
// The closed form is evaluated in doubles and then certified with
// verify_kmax_safe, bumping the cutoff up if certification fails (it never
// does in practice). Requires n >= 7 and compl_prev >= 1.
std::uint64_t compute_kmax(std::uint64_t n, unsigned compl_prev);

// True iff cutting the sum loop after kmax is provably safe: either nothing
// is cut (kmax >= floor(n/2)), or (kmax+1)(n-kmax-1) >= 3^((1+compl_prev)/3),
// decided in exact integer arithmetic so that a true answer is rigorous.
bool verify_kmax_safe(std::uint64_t n, std::uint64_t kmax, unsigned compl_prev);

// ||n|| recomputed from final entries below n (payload[i] = ||i+1||, all
// entries below n must be present). Used for checkpoint re-verification.
std::uint8_t recompute_entry(std::span<const std::uint8_t> payload, std::uint64_t n,
                             std::uint64_t* kmax_used = nullptr);

// Unpruned recurrence with the full sum loop to n/2: the independent oracle
// the tests compare against. Quadratic, so it refuses limits above the cap.
ComplexityTable brute_force_table(std::uint64_t limit, std::uint64_t cap = 100000);

}  // namespace ncpx

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ncpx/analysis.hpp"
#include "ncpx/bounds.hpp"
#include "ncpx/engine.hpp"
#include "ncpx/errors.hpp"
#include "ncpx/expr.hpp"
#include "ncpx/reports.hpp"
#include "ncpx/table_io.hpp"

namespace {

using ncpx::ComplexityTable;

constexpr std::uint64_t kDefaultBudgetMb = 2048;

std::uint64_t budget_bytes(std::optional<std::uint64_t> flag_mb) {
    std::uint64_t mb = kDefaultBudgetMb;
    if (const char* env = std::getenv("NCPX_MEM_BUDGET_MB"))
        mb = std::strtoull(env, nullptr, 10);
    if (flag_mb)
        mb = *flag_mb;
    return mb << 20;
}

void write_out(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream os(out_path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw ncpx::io_error("cannot open " + out_path + " for writing");
    os << content;
    if (!os)
        throw ncpx::io_error("write failed for " + out_path);
}

int run_compute(std::uint64_t limit, const std::string& out_path, const std::string& ck_path,
                bool resume, std::optional<std::uint64_t> mem_mb, std::uint64_t ck_interval,
                bool quiet) {
    ncpx::BuildOptions opt;
    opt.memory_budget_bytes = budget_bytes(mem_mb);
    opt.checkpoint_interval = ck_interval;
    if (!quiet) {
        opt.champion = [](const ncpx::ChampionRecord& c) {
            std::printf("n = %" PRIu64 "    kMax = %" PRIu64
                        "    champion = %d    ||n||/log(n) = %.10f\n",
                        c.n, c.kmax, c.complexity, c.ratio);
        };
        opt.progress = [](std::uint64_t n, double secs, std::uint64_t max_kmax) {
            std::fprintf(stderr, "... n = %" PRIu64 "  %.1fs  max kMax %" PRIu64 "\n", n, secs,
                         max_kmax);
        };
    }
    if (!ck_path.empty())
        opt.checkpoint = [&](std::span<const std::uint8_t> payload, std::uint64_t cursor) {
            ncpx::save_checkpoint(limit, cursor, payload, ck_path);
        };

    ComplexityTable table;
    if (resume) {
        if (ck_path.empty())
            throw CLI::ValidationError("--resume requires --checkpoint");
        ncpx::Checkpoint ck = ncpx::load_checkpoint(ck_path);
        if (ck.limit != limit)
            throw ncpx::integrity_error("checkpoint was taken for limit " +
                                        std::to_string(ck.limit) + ", not " +
                                        std::to_string(limit));
        table = ncpx::resume_table(limit, std::move(ck.payload), opt);
    } else {
        table = ncpx::build_table(limit, opt);
    }
    ncpx::save_table(table, out_path);
    if (!quiet)
        std::fprintf(stderr, "wrote %s (limit %" PRIu64 ")\n", out_path.c_str(), limit);
    return 0;
}

int run_query(std::uint64_t n, const std::string& table_path, bool with_expr) {
    const ComplexityTable table = ncpx::load_table(table_path);
    if (n < 1 || n > table.limit())
        throw CLI::ValidationError("n is outside the table range 1.." +
                                   std::to_string(table.limit()));
    std::cout << "‖" << n << "‖ = " << static_cast<int>(table[n]) << "\n";
    if (with_expr) {
        const ncpx::Expression e = ncpx::reconstruct_minimal(table, n);
        std::cout << n << " = " << ncpx::format(e, ncpx::ExprStyle::shorthand) << "   ("
                  << e.ones_count() << " ones)\n";
    }
    return 0;
}

int run_records(const std::string& table_path, const std::string& fmt, const std::string& out) {
    const ComplexityTable table = ncpx::load_table(table_path);
    const auto records = ncpx::highly_complex_records(table);
    write_out(fmt == "json" ? ncpx::records_json(records) : ncpx::records_csv(records), out);
    return 0;
}

int run_guy(int question, const std::string& table_path) {
    const ComplexityTable table = ncpx::load_table(table_path);
    const std::uint64_t limit = table.limit();
    switch (question) {
        case 1: {
            const auto v = ncpx::q1_scan(table);
            std::cout << v.size() << " exception(s) to ||2^a 3^b|| = 2a+3b up to " << limit
                      << "\n";
            for (const auto& [a, b] : v)
                std::cout << "a=" << a << " b=" << b << "\n";
            break;
        }
        case 2: {
            const auto v = ncpx::q2_scan(table);
            std::cout << v.size() << " prime(s) with ||p|| != 1+||p-1|| up to " << limit << "\n";
            for (auto p : v)
                std::cout << p << "\n";
            break;
        }
        case 3: {
            const auto v = ncpx::q3_scan(table);
            std::cout << v.size() << " prime(s) with 3+||p|| > 1+||3p-1||\n";
            for (auto p : v)
                std::cout << p << "\n";
            break;
        }
        case 4: {
            const auto r = ncpx::q4_classify(table);
            std::cout << "L<R: " << r.left_smaller << "\nR<L: " << r.right_smaller
                      << "\nL=R: " << r.equal << "\nviolations: " << r.violations.size() << "\n";
            for (auto p : r.violations)
                std::cout << p << "\n";
            break;
        }
        case 5: {
            const auto v = ncpx::q5_sum_only_cases(table);
            std::cout << v.size() << " case(s) where the sum minimum needs k > 1\n";
            for (const auto& [n, k] : v)
                std::cout << "n=" << n << " k=" << k << "\n";
            break;
        }
        case 6: {
            const auto st = ncpx::q6_stats(table);
            std::printf("n = 2..%" PRIu64 "\nmean_c = %.6f\nstddev_c = %.6f\nfreq(c > 0.3) = %.6f\n",
                        st.range_end, st.mean_c, st.stddev_c, st.freq_above_03);
            break;
        }
    }
    return 0;
}

int run_stats(const std::string& which, const std::string& table_path, unsigned bins,
              const std::string& out) {
    const ComplexityTable table = ncpx::load_table(table_path);
    if (which == "cr") {
        write_out(ncpx::cr_histogram_csv(ncpx::cr_histogram(table, bins)), out);
    } else if (which == "drops") {
        write_out(ncpx::drops_csv(ncpx::drop_records(table)), out);
    } else if (which == "addexc") {
        write_out(ncpx::addexc_csv(ncpx::additive_excess_records(table)), out);
    } else {  // c
        const auto st = ncpx::q6_stats(table);
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "n = 2..%" PRIu64 "\nmean_c = %.6f\nstddev_c = %.6f\nfreq(c > 0.3) = %.6f\n",
                      st.range_end, st.mean_c, st.stddev_c, st.freq_above_03);
        write_out(buf, out);
    }
    return 0;
}

int run_verify_expr(const std::string& text) {
    const ncpx::Expression e = ncpx::parse(text);
    std::cout << "value=" << e.value() << " ones=" << e.ones_count() << "\n";
    return 0;
}

int run_predict(int target_m, const std::string& table_path, int fit_min_m) {
    const ComplexityTable table = ncpx::load_table(table_path);
    const auto records = ncpx::highly_complex_records(table);
    const auto iv = ncpx::predict_first_occurrence(records, target_m, fit_min_m);
    const double point = std::sqrt(iv.low * iv.high);
    std::printf("F(%d) ~ %.4g   interval [%.4g, %.4g]\n", target_m, point, iv.low, iv.high);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"integer complexity toolkit: minimal number of 1's to build n from +, * and parentheses"};
    app.require_subcommand(1);

    std::function<int()> action;

    // compute
    std::uint64_t limit = 0;
    std::string out_path, ck_path;
    bool resume = false, quiet = false;
    std::optional<std::uint64_t> mem_mb;
    std::uint64_t ck_interval = std::uint64_t{1} << 24;
    auto* compute = app.add_subcommand("compute", "build the table for 1..N and save it");
    compute->add_option("--limit", limit, "table size N")->required();
    compute->add_option("--out", out_path, "output table file")->required();
    compute->add_option("--checkpoint", ck_path, "checkpoint file to write (and resume from)");
    compute->add_flag("--resume", resume, "continue from the checkpoint file");
    compute->add_option("--mem-budget-mb", mem_mb,
                        "memory budget in MiB (default 2048, or NCPX_MEM_BUDGET_MB)");
    compute->add_option("--checkpoint-interval", ck_interval, "entries between checkpoints");
    compute->add_flag("--quiet", quiet, "suppress champion and progress logs");
    compute->callback([&] {
        action = [&] {
            return run_compute(limit, out_path, ck_path, resume, mem_mb, ck_interval, quiet);
        };
    });

    // query
    std::uint64_t query_n = 0;
    std::string table_path;
    bool with_expr = false;
    auto* query = app.add_subcommand("query", "look up ||n|| in a saved table");
    query->add_option("n", query_n, "the number to look up")->required();
    query->add_option("--table", table_path, "table file")->required();
    query->add_flag("--expr", with_expr, "also print a minimal expression");
    query->callback([&] { action = [&] { return run_query(query_n, table_path, with_expr); }; });

    // records
    std::string rec_table, rec_format = "csv", rec_out;
    auto* records = app.add_subcommand("records", "highly complex number records");
    records->add_option("--table", rec_table, "table file")->required();
    records->add_option("--format", rec_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    records->add_option("--out", rec_out, "write to a file instead of stdout");
    records->callback([&] { action = [&] { return run_records(rec_table, rec_format, rec_out); }; });

    // guy q1..q6
    std::string guy_table;
    auto* guy = app.add_subcommand("guy", "the classic question scans");
    guy->require_subcommand(1);
    for (int q = 1; q <= 6; ++q) {
        auto* sub = guy->add_subcommand("q" + std::to_string(q));
        sub->add_option("--table", guy_table, "table file")->required();
        sub->callback([&action, &guy_table, q] {
            action = [&guy_table, q] { return run_guy(q, guy_table); };
        });
    }

    // stats
    std::string stats_table, stats_out;
    unsigned bins = 50;
    auto* stats = app.add_subcommand("stats", "distribution reports over a table");
    stats->require_subcommand(1);
    auto* st_cr = stats->add_subcommand("cr", "complexity ratio histogram");
    st_cr->add_option("--bins", bins, "bin count (default 50)");
    auto* st_drops = stats->add_subcommand("drops", "first n per drop ||n-1||-||n|| = k");
    auto* st_addexc = stats->add_subcommand("addexc", "first n per additive excess k");
    auto* st_c = stats->add_subcommand("c", "statistics of c in ||n|| = (3+c) ln n / ln 3");
    for (auto* sub : {st_cr, st_drops, st_addexc, st_c}) {
        sub->add_option("--table", stats_table, "table file")->required();
        sub->add_option("--out", stats_out, "write to a file instead of stdout");
    }
    st_cr->callback([&] { action = [&] { return run_stats("cr", stats_table, bins, stats_out); }; });
    st_drops->callback(
        [&] { action = [&] { return run_stats("drops", stats_table, bins, stats_out); }; });
    st_addexc->callback(
        [&] { action = [&] { return run_stats("addexc", stats_table, bins, stats_out); }; });
    st_c->callback([&] { action = [&] { return run_stats("c", stats_table, bins, stats_out); }; });

    // verify-expr
    std::string expr_text;
    auto* verify = app.add_subcommand("verify-expr", "evaluate a sum-product expression");
    verify->add_option("expression", expr_text, "e.g. \"(1+1)(1+1+1)\"")->required();
    verify->callback([&] { action = [&] { return run_verify_expr(expr_text); }; });

    // mahler-popken
    std::uint64_t mp_n = 0;
    auto* mp = app.add_subcommand("mahler-popken", "largest number writable with N ones");
    mp->add_option("n", mp_n, "number of ones")->required();
    mp->callback([&] {
        action = [&] {
            std::cout << ncpx::mahler_popken_max(mp_n) << "\n";
            return 0;
        };
    });

    // predict
    int target_m = 0, fit_min_m = 10;
    std::string predict_table;
    auto* predict = app.add_subcommand("predict", "least-squares estimate of F(m)");
    predict->add_option("m", target_m, "target complexity")->required();
    predict->add_option("--table", predict_table, "table file")->required();
    predict->add_option("--fit-min-m", fit_min_m, "lowest m used in the fit (default 10)");
    predict->callback(
        [&] { action = [&] { return run_predict(target_m, predict_table, fit_min_m); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action();
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ncpx::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ncpx::resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ncpx::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ncpx::integrity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

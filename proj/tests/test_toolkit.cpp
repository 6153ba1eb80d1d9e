#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "ncpx/errors.hpp"
#include "ncpx/reports.hpp"
#include "ncpx/table_io.hpp"

using namespace ncpx;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "ncpx_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::vector<std::uint8_t> slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    REQUIRE(os);
    os.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
}

// Runs the CLI when the build exported its location; returns (exit code, stdout).
struct CliResult {
    int code;
    std::string out;
};

const char* cli_bin() {
    return std::getenv("NCPX_CLI_BIN");
}

CliResult run_cli(const std::string& args) {
    const fs::path out = temp_dir() / "cli_stdout.txt";
    const std::string cmd = std::string(cli_bin()) + " " + args + " > " + out.string() + " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    std::ifstream is(out);
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    const int code = raw == -1 ? -1 : WEXITSTATUS(raw);
    return {code, text};
}

}  // namespace

TEST_CASE("fnv1a64 reference vectors") {
    auto of = [](const char* s) {
        return fnv1a64({reinterpret_cast<const std::uint8_t*>(s), std::string(s).size()});
    };
    CHECK(fnv1a64({}) == 0xcbf29ce484222325ull);
    CHECK(of("a") == 0xaf63dc4c8601ec8cull);
    CHECK(of("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("table files round trip") {
    const ComplexityTable& t = cached_table(18);
    const fs::path path = temp_dir() / "t18.bin";
    save_table(t, path);

    const ComplexityTable back = load_table(path);
    CHECK(back == t);
    const std::uint8_t tail[] = {6, 6, 6, 7, 8, 7, 8, 8, 8, 8, 9, 8};
    for (std::uint64_t n = 7; n <= 18; ++n)
        CHECK(back[n] == tail[n - 7]);

    // header layout: magic | version | limit | payload | checksum
    const auto bytes = slurp(path);
    REQUIRE(bytes.size() == 4 + 1 + 8 + 18 + 8);
    CHECK(bytes[0] == 'N');
    CHECK(bytes[1] == 'C');
    CHECK(bytes[2] == 'P');
    CHECK(bytes[3] == 'X');
    CHECK(bytes[4] == 1);
    CHECK(bytes[5] == 18);  // limit, little endian
    for (int i = 6; i < 13; ++i)
        CHECK(bytes[i] == 0);
    CHECK(bytes[13] == 1);  // ||1||
}

TEST_CASE("loading rejects corruption") {
    const ComplexityTable& t = cached_table(18);
    const fs::path path = temp_dir() / "t18_corrupt.bin";
    save_table(t, path);
    const auto original = slurp(path);

    SUBCASE("flipped payload byte fails the checksum") {
        auto bytes = original;
        bytes[13 + 5] ^= 0x40;
        spit(path, bytes);
        CHECK_THROWS_WITH_AS(load_table(path), "checksum mismatch at offset 31", integrity_error);
    }
    SUBCASE("truncation is reported") {
        auto bytes = original;
        bytes.resize(bytes.size() - 9);  // kills trailer and one payload byte
        spit(path, bytes);
        CHECK_THROWS_AS(load_table(path), integrity_error);
    }
    SUBCASE("bad magic") {
        auto bytes = original;
        bytes[0] = 'X';
        spit(path, bytes);
        CHECK_THROWS_WITH_AS(load_table(path), "bad magic at offset 0", integrity_error);
    }
    SUBCASE("bad version") {
        auto bytes = original;
        bytes[4] = 9;
        spit(path, bytes);
        CHECK_THROWS_WITH_AS(load_table(path), "unsupported version at offset 4", integrity_error);
    }
    SUBCASE("trailing garbage") {
        auto bytes = original;
        bytes.push_back(0);
        spit(path, bytes);
        CHECK_THROWS_AS(load_table(path), integrity_error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_table(temp_dir() / "no_such_table.bin"), io_error);
    }
}

TEST_CASE("checkpoints round trip and stay atomic") {
    const ComplexityTable& t = cached_table(2000);
    const fs::path path = temp_dir() / "ck.bin";
    const auto payload = t.payload();

    save_checkpoint(2000, 1500, payload.subspan(0, 1500), path);
    CHECK_FALSE(fs::exists(path.string() + ".tmp"));

    const Checkpoint ck = load_checkpoint(path);
    CHECK(ck.limit == 2000);
    CHECK(ck.cursor == 1500);
    REQUIRE(ck.payload.size() == 1500);
    for (std::size_t i = 0; i < 1500; ++i)
        REQUIRE(ck.payload[i] == payload[i]);

    SUBCASE("cursor beyond limit is rejected") {
        auto bytes = slurp(path);
        bytes[20] = 0xFF;  // top byte of the cursor field
        spit(path, bytes);
        CHECK_THROWS_WITH_AS(load_checkpoint(path), "cursor exceeds limit at offset 13",
                             integrity_error);
    }
    SUBCASE("a table file is not a checkpoint") {
        save_table(t, path);
        CHECK_THROWS_AS(load_checkpoint(path), integrity_error);
    }
}

TEST_CASE("report renderings") {
    const ComplexityTable& t = cached_table(2000);
    const auto records = highly_complex_records(t);

    const std::string csv = records_csv(records);
    CHECK(csv.rfind("m,F_m,kMax,ratio,M_m,S_m_size\n", 0) == 0);
    CHECK(csv.find("\n26,1439,10,3.5755032174,13122,\n") != std::string::npos);
    CHECK(csv.find("\n1,1,,,1,1\n") != std::string::npos);

    CHECK(records_csv({}) == "m,F_m,kMax,ratio,M_m,S_m_size\n");

    const std::string js = records_json(records);
    CHECK(js.find("\"m\": 26") != std::string::npos);
    CHECK(js.find("\"F_m\": 1439") != std::string::npos);
    CHECK(js.find("\"M_m\": \"13122\"") != std::string::npos);

    const auto drops = drop_records(t);
    const std::string dcsv = drops_csv(drops);
    CHECK(dcsv.rfind("k,n\n", 0) == 0);
    CHECK(dcsv.find("0,6\n") != std::string::npos);
    CHECK(dcsv.find("5,1440\n") != std::string::npos);

    const auto hist = cr_histogram(t, 4);
    const std::string hcsv = cr_histogram_csv(hist);
    CHECK(hcsv.rfind("bin,lo,hi,count\n", 0) == 0);
    CHECK(hcsv.find("0,0.000000,0.250000,") != std::string::npos);
}

TEST_CASE("export_reports writes deterministic files") {
    const ComplexityTable& t = cached_table(2000);
    AnalysisReport report;
    report.records = highly_complex_records(t);
    report.drops = drop_records(t);
    report.addexc = additive_excess_records(t);
    report.cr_bins = cr_histogram(t, 10);

    const fs::path dir = temp_dir() / "reports";
    const auto written = export_reports(report, dir, ReportFormat::csv);
    REQUIRE(written.size() == 4);
    for (const auto& p : written)
        CHECK(fs::exists(p));

    const auto first = slurp(written[0]);
    export_reports(report, dir, ReportFormat::csv);
    CHECK(slurp(written[0]) == first);  // byte identical on rerun

    const auto json_files = export_reports(report, dir, ReportFormat::json);
    REQUIRE(json_files.size() == 4);
    CHECK(json_files[0].extension() == ".json");
}

TEST_CASE("command line round trip" * doctest::skip(!cli_bin())) {
    const fs::path dir = temp_dir();
    const fs::path table = dir / "cli_t18.bin";

    auto r = run_cli("compute --limit 18 --out " + table.string() + " --quiet");
    REQUIRE(r.code == 0);
    CHECK(load_table(table) == cached_table(18));

    r = run_cli("query 12 --table " + table.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("= 7") != std::string::npos);

    r = run_cli("query 1439 --table " + table.string());
    CHECK(r.code == 2);  // out of range is a usage error

    r = run_cli("verify-expr \"(1+1)(1+1+1)\"");
    CHECK(r.code == 0);
    CHECK(r.out == "value=6 ones=5\n");

    r = run_cli("verify-expr \"4+1\"");
    CHECK(r.code == 2);

    r = run_cli("mahler-popken 100");
    CHECK(r.code == 0);
    CHECK(r.out == "7412080755407364\n");

    r = run_cli("records --table " + table.string());
    CHECK(r.code == 0);
    CHECK(r.out.rfind("m,F_m,kMax,ratio,M_m,S_m_size\n", 0) == 0);

    r = run_cli("guy q1 --table " + table.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("0 exception(s)") != std::string::npos);

    r = run_cli("stats drops --table " + table.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("0,6") != std::string::npos);

    r = run_cli("query 5 --table " + (dir / "missing.bin").string());
    CHECK(r.code == 3);

    r = run_cli("nonsense");
    CHECK(r.code == 2);

    r = run_cli("compute --limit 9999999 --out " + (dir / "x.bin").string() +
                " --mem-budget-mb 1 --quiet");
    CHECK(r.code == 4);

    // same budget, but through the environment
    {
        const fs::path out = dir / "cli_env.txt";
        const std::string cmd = "NCPX_MEM_BUDGET_MB=1 " + std::string(cli_bin()) +
                                " compute --limit 9999999 --out " + (dir / "x.bin").string() +
                                " --quiet > " + out.string() + " 2>/dev/null";
        const int raw = std::system(cmd.c_str());
        CHECK(WEXITSTATUS(raw) == 4);
    }
}

TEST_CASE("command line checkpoint resume is byte identical" * doctest::skip(!cli_bin())) {
    const fs::path dir = temp_dir();
    const fs::path direct = dir / "direct.bin";
    const fs::path resumed = dir / "resumed.bin";
    const fs::path ck = dir / "cli_ck.bin";

    auto r = run_cli("compute --limit 150000 --out " + direct.string() + " --checkpoint " +
                     ck.string() + " --checkpoint-interval 60000 --quiet");
    REQUIRE(r.code == 0);
    // last checkpoint sits at cursor 120000, as if the run had been interrupted
    const Checkpoint saved = load_checkpoint(ck);
    CHECK(saved.cursor == 120000);

    r = run_cli("compute --limit 150000 --out " + resumed.string() + " --checkpoint " +
                ck.string() + " --resume --quiet");
    REQUIRE(r.code == 0);
    CHECK(slurp(direct) == slurp(resumed));

    r = run_cli("compute --limit 100 --out " + (dir / "y.bin").string() + " --checkpoint " +
                ck.string() + " --resume --quiet");
    CHECK(r.code == 3);  // limit mismatch against the checkpoint
}

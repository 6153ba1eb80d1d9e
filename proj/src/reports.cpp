#include "ncpx/reports.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "ncpx/errors.hpp"

namespace ncpx {

namespace {

using json = nlohmann::ordered_json;

std::string fixed10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10f", v);
    return buf;
}

std::string fixed6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string pairs_csv(const std::map<int, std::uint64_t>& rows) {
    std::string out = "k,n\n";
    for (const auto& [k, n] : rows) {
        out += std::to_string(k);
        out += ',';
        out += std::to_string(n);
        out += '\n';
    }
    return out;
}

std::string pairs_json(const std::map<int, std::uint64_t>& rows) {
    json arr = json::array();
    for (const auto& [k, n] : rows)
        arr.push_back({{"k", k}, {"n", n}});
    return arr.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw io_error("cannot open " + path.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os)
        throw io_error("write failed for " + path.string());
}

}  // namespace

std::string records_csv(const std::vector<HighlyComplexRecord>& records) {
    std::string out = "m,F_m,kMax,ratio,M_m,S_m_size\n";
    for (const auto& r : records) {
        out += std::to_string(r.m);
        out += ',';
        out += std::to_string(r.first);
        out += ',';
        if (r.kmax_at_first)
            out += std::to_string(*r.kmax_at_first);
        out += ',';
        if (r.ratio)
            out += fixed10(*r.ratio);
        out += ',';
        out += r.max_elem.str();
        out += ',';
        if (r.class_size)
            out += std::to_string(*r.class_size);
        out += '\n';
    }
    return out;
}

std::string records_json(const std::vector<HighlyComplexRecord>& records) {
    json arr = json::array();
    for (const auto& r : records) {
        json row;
        row["m"] = r.m;
        row["F_m"] = r.first;
        row["kMax"] = r.kmax_at_first ? json(*r.kmax_at_first) : json(nullptr);
        row["ratio"] = r.ratio ? json(*r.ratio) : json(nullptr);
        row["M_m"] = r.max_elem.str();  // string keeps it exact past 64 bits
        row["S_m_size"] = r.class_size ? json(*r.class_size) : json(nullptr);
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

std::string drops_csv(const std::map<int, std::uint64_t>& drops) {
    return pairs_csv(drops);
}

std::string drops_json(const std::map<int, std::uint64_t>& drops) {
    return pairs_json(drops);
}

std::string addexc_csv(const std::map<int, std::uint64_t>& firsts) {
    return pairs_csv(firsts);
}

std::string addexc_json(const std::map<int, std::uint64_t>& firsts) {
    return pairs_json(firsts);
}

std::string cr_histogram_csv(const std::vector<std::uint64_t>& bins) {
    const double width = bins.empty() ? 0.0 : 1.0 / static_cast<double>(bins.size());
    std::string out = "bin,lo,hi,count\n";
    for (std::size_t i = 0; i < bins.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += fixed6(static_cast<double>(i) * width);
        out += ',';
        out += fixed6(static_cast<double>(i + 1) * width);
        out += ',';
        out += std::to_string(bins[i]);
        out += '\n';
    }
    return out;
}

std::string cr_histogram_json(const std::vector<std::uint64_t>& bins) {
    const double width = bins.empty() ? 0.0 : 1.0 / static_cast<double>(bins.size());
    json arr = json::array();
    for (std::size_t i = 0; i < bins.size(); ++i)
        arr.push_back({{"bin", i},
                       {"lo", static_cast<double>(i) * width},
                       {"hi", static_cast<double>(i + 1) * width},
                       {"count", bins[i]}});
    return arr.dump(2) + "\n";
}

std::vector<std::filesystem::path> export_reports(const AnalysisReport& report,
                                                  const std::filesystem::path& dir,
                                                  ReportFormat format) {
    std::filesystem::create_directories(dir);
    const bool csv = format == ReportFormat::csv;
    const char* ext = csv ? ".csv" : ".json";

    std::vector<std::filesystem::path> written;
    auto emit = [&](const char* stem, const std::string& content) {
        const auto path = dir / (stem + std::string(ext));
        write_file(path, content);
        written.push_back(path);
    };
    emit("records", csv ? records_csv(report.records) : records_json(report.records));
    emit("drops", csv ? drops_csv(report.drops) : drops_json(report.drops));
    emit("addexc", csv ? addexc_csv(report.addexc) : addexc_json(report.addexc));
    emit("cr_histogram",
         csv ? cr_histogram_csv(report.cr_bins) : cr_histogram_json(report.cr_bins));
    return written;
}

}  // namespace ncpx

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ncpx/analysis.hpp"

namespace ncpx {

// Fixed report schemas. CSV columns: records use
// m,F_m,kMax,ratio,M_m,S_m_size with empty cells for absent values; drops and
// addexc use k,n; the histogram uses bin,lo,hi,count. The JSON renderings
// mirror the field names (M_m as a string to stay exact).
std::string records_csv(const std::vector<HighlyComplexRecord>& records);
std::string records_json(const std::vector<HighlyComplexRecord>& records);
std::string drops_csv(const std::map<int, std::uint64_t>& drops);
std::string drops_json(const std::map<int, std::uint64_t>& drops);
std::string addexc_csv(const std::map<int, std::uint64_t>& firsts);
std::string addexc_json(const std::map<int, std::uint64_t>& firsts);
std::string cr_histogram_csv(const std::vector<std::uint64_t>& bins);
std::string cr_histogram_json(const std::vector<std::uint64_t>& bins);

enum class ReportFormat { csv, json };

// The scan results that have a file schema, bundled for export.
struct AnalysisReport {
    std::vector<HighlyComplexRecord> records;
    std::map<int, std::uint64_t> drops;
    std::map<int, std::uint64_t> addexc;
    std::vector<std::uint64_t> cr_bins;
};

// Writes records, drops, addexc and cr_histogram files into dir and returns
// the paths written. Output is deterministic for a given report.
std::vector<std::filesystem::path> export_reports(const AnalysisReport& report,
                                                  const std::filesystem::path& dir,
                                                  ReportFormat format);

}  // namespace ncpx

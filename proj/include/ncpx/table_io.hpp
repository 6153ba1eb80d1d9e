#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ncpx/table.hpp"

namespace ncpx {

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);

// Table file, little-endian throughout:
//   offset 0   magic "NCPX"
//   offset 4   version byte (1)
//   offset 5   limit, u64
//   offset 13  payload, limit bytes, byte i = complexity of i+1
//   trailer    FNV-1a 64 checksum of the payload, u64
void save_table(const ComplexityTable& table, const std::filesystem::path& path);
ComplexityTable load_table(const std::filesystem::path& path);

// Checkpoint file: same idea with magic "NCPK" and a resume cursor between
// the limit and the payload; the payload holds the cursor finalized entries.
// Written to a temp file and renamed into place so an interrupted write can
// never be mistaken for a valid checkpoint.
struct Checkpoint {
    std::uint64_t limit = 0;
    std::uint64_t cursor = 0;  // entries 1..cursor are final
    std::vector<std::uint8_t> payload;
};

void save_checkpoint(std::uint64_t limit, std::uint64_t cursor,
                     std::span<const std::uint8_t> payload,
                     const std::filesystem::path& path);
void save_checkpoint(const Checkpoint& ck, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace ncpx

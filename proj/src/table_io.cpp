#include "ncpx/table_io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "ncpx/errors.hpp"

namespace ncpx {

namespace {

using u8 = std::uint8_t;
using u64 = std::uint64_t;

constexpr std::array<char, 4> kTableMagic{'N', 'C', 'P', 'X'};
constexpr std::array<char, 4> kCheckpointMagic{'N', 'C', 'P', 'K'};
constexpr u8 kVersion = 1;

constexpr u64 kFnvOffsetBasis = 0xcbf29ce484222325ull;
constexpr u64 kFnvPrime = 0x100000001b3ull;

void put_u64le(std::ostream& os, u64 v) {
    char b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    os.write(b, 8);
}

u64 read_u64le(std::istream& is, const char* field, u64 offset) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8))
        throw integrity_error(std::string("truncated file: ") + field + " missing at offset " +
                              std::to_string(offset));
    u64 v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<u64>(b[i]) << (8 * i);
    return v;
}

void check_magic(std::istream& is, const std::array<char, 4>& expect) {
    char got[4];
    if (!is.read(got, 4) || !std::equal(got, got + 4, expect.begin()))
        throw integrity_error("bad magic at offset 0");
}

u8 check_version(std::istream& is) {
    char v;
    if (!is.read(&v, 1))
        throw integrity_error("truncated file: version missing at offset 4");
    if (static_cast<u8>(v) != kVersion)
        throw integrity_error("unsupported version at offset 4");
    return static_cast<u8>(v);
}

std::vector<u8> read_payload(std::istream& is, u64 count, u64 offset) {
    std::vector<u8> payload(count);
    if (count > 0 && !is.read(reinterpret_cast<char*>(payload.data()),
                              static_cast<std::streamsize>(count)))
        throw integrity_error("truncated payload at offset " + std::to_string(offset));
    return payload;
}

void check_trailer(std::istream& is, const std::vector<u8>& payload, u64 offset) {
    const u64 stored = read_u64le(is, "checksum", offset);
    if (stored != fnv1a64(payload))
        throw integrity_error("checksum mismatch at offset " + std::to_string(offset));
    // anything after the trailer is not ours
    char extra;
    if (is.read(&extra, 1))
        throw integrity_error("trailing bytes after checksum at offset " +
                              std::to_string(offset + 8));
}

}  // namespace

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
    u64 h = kFnvOffsetBasis;
    for (u8 b : bytes) {
        h ^= b;
        h *= kFnvPrime;
    }
    return h;
}

void save_table(const ComplexityTable& table, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw io_error("cannot open " + path.string() + " for writing");
    os.write(kTableMagic.data(), 4);
    os.put(static_cast<char>(kVersion));
    put_u64le(os, table.limit());
    const auto payload = table.payload();
    os.write(reinterpret_cast<const char*>(payload.data()),
             static_cast<std::streamsize>(payload.size()));
    put_u64le(os, fnv1a64(payload));
    os.flush();
    if (!os)
        throw io_error("write failed for " + path.string());
}

ComplexityTable load_table(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw io_error("cannot open " + path.string());
    check_magic(is, kTableMagic);
    check_version(is);
    const u64 limit = read_u64le(is, "limit", 5);
    auto payload = read_payload(is, limit, 13);
    check_trailer(is, payload, 13 + limit);
    return ComplexityTable(std::move(payload));
}

void save_checkpoint(std::uint64_t limit, std::uint64_t cursor,
                     std::span<const std::uint8_t> payload, const std::filesystem::path& path) {
    if (cursor > limit || payload.size() != cursor)
        throw std::invalid_argument("save_checkpoint: cursor/payload mismatch");
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw io_error("cannot open " + tmp.string() + " for writing");
        os.write(kCheckpointMagic.data(), 4);
        os.put(static_cast<char>(kVersion));
        put_u64le(os, limit);
        put_u64le(os, cursor);
        os.write(reinterpret_cast<const char*>(payload.data()),
                 static_cast<std::streamsize>(payload.size()));
        put_u64le(os, fnv1a64(payload));
        os.flush();
        if (!os)
            throw io_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void save_checkpoint(const Checkpoint& ck, const std::filesystem::path& path) {
    save_checkpoint(ck.limit, ck.cursor, ck.payload, path);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw io_error("cannot open " + path.string());
    check_magic(is, kCheckpointMagic);
    check_version(is);
    Checkpoint ck;
    ck.limit = read_u64le(is, "limit", 5);
    ck.cursor = read_u64le(is, "cursor", 13);
    if (ck.cursor > ck.limit)
        throw integrity_error("cursor exceeds limit at offset 13");
    ck.payload = read_payload(is, ck.cursor, 21);
    check_trailer(is, ck.payload, 21 + ck.cursor);
    return ck;
}

}  // namespace ncpx

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ncpx {

// Dense table of complexities: entry n (1-based) is the minimal number of 1's
// needed to write n using +, * and parentheses. One byte per entry is enough
// for any table that fits in memory (the upper bound gives values below 90
// for n < 1e9). Immutable once built; any number of readers may share it.
class ComplexityTable {
public:
    ComplexityTable() = default;

    // payload[i] = complexity of i+1. Producers are the builder and the file
    // loader; everything else treats tables as read-only values.
    explicit ComplexityTable(std::vector<std::uint8_t> payload)
        : values_(std::move(payload)) {}

    std::uint64_t limit() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    // Unchecked 1-based access.
    std::uint8_t operator[](std::uint64_t n) const { return values_[n - 1]; }

    // Checked 1-based access, throws std::out_of_range.
    std::uint8_t at(std::uint64_t n) const;

    std::span<const std::uint8_t> payload() const { return values_; }

    friend bool operator==(const ComplexityTable&, const ComplexityTable&) = default;

private:
    std::vector<std::uint8_t> values_;
};

// values[n] with a range check.
std::uint8_t complexity_of(const ComplexityTable& table, std::uint64_t n);

}  // namespace ncpx

#pragma once

#include <stdexcept>

namespace ncpx {

// A request would exceed a configured resource budget (memory, brute-force cap).
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Persisted data failed validation (magic, version, length or checksum).
struct integrity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An invariant the data structures are supposed to guarantee was observed broken.
struct invariant_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace ncpx

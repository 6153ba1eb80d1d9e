#pragma once

#include <cstdint>
#include <map>

#include "ncpx/engine.hpp"

// Tables are immutable, so tests share one instance per limit.
inline const ncpx::ComplexityTable& cached_table(std::uint64_t limit) {
    static std::map<std::uint64_t, ncpx::ComplexityTable> cache;
    auto it = cache.find(limit);
    if (it == cache.end())
        it = cache.emplace(limit, ncpx::build_table(limit)).first;
    return it->second;
}

#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

namespace dnastore {

// Scalars print with 10 significant digits everywhere (stdout and CSV), so
// reruns with the same seed are byte-identical.
inline std::string g10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline std::string u64str(std::uint64_t v) {
    return std::to_string(v);
}

} // namespace dnastore

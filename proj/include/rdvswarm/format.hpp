#pragma once

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace rdvswarm {

/// Shortest decimal form that parses back to exactly the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Nearest double to v after rounding to `digits` significant decimal digits.
inline double round_significant(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return std::strtod(buf, nullptr);
}

}  // namespace rdvswarm

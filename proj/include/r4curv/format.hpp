#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace r4curv {

// Shortest decimal form that parses back to exactly the same double.
inline std::string fmt_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline std::string fmt_double(double x, int precision) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
    return buf;
}

} // namespace r4curv

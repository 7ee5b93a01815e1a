#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace gcf {

// 17 significant digits: enough to round-trip any double, used for CSV
// cells and soliton tables.
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Shortest decimal that round-trips, for JSON values.
inline std::string format_shortest(double x) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, p);
}

}  // namespace gcf

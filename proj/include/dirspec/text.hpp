#pragma once

// Locale-independent numeric formatting for report serialization.

#include <charconv>
#include <string>

namespace dirspec {

// Scientific notation with 17 significant digits: enough to reproduce any
// double exactly, and fixed-width enough for column-aligned CSV output.
inline std::string format_sci(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

// Shortest representation that round-trips.
inline std::string format_shortest_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace dirspec

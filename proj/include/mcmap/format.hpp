#pragma once

// Shortest round-trip text form for doubles: parsing the output and printing
// it again reproduces the bytes, which is what makes CSV/JSON output both
// lossless and byte-stable across runs.

#include <charconv>
#include <string>

namespace mcmap {

inline std::string fmt_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace mcmap

#pragma once

#include <charconv>
#include <string>

#include "cavegen/errors.hpp"

namespace cavegen {

// Fixed-precision float formatting via to_chars: locale-independent, so
// generated documents are byte-identical regardless of the host environment.
inline std::string fmt_fixed(double value, int decimals) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
    if (res.ec != std::errc{}) throw IoError("number formatting failed");
    return std::string(buf, res.ptr);
}

} // namespace cavegen

#pragma once

#include <charconv>
#include <string>

namespace grnevo {

/// Shortest round-trip, locale-independent representation.
[[nodiscard]] inline std::string format_number(double value)
{
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return {buf, result.ptr};
}

} // namespace grnevo

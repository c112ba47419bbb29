#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include "modemflow/errors.hpp"

// Locale-independent, canonical number formatting shared by every text
// surface (configs, routing tables, CSV). Doubles use the shortest
// round-trip representation so serialize -> parse -> serialize is
// byte-identical.

namespace modemflow::textio {

inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string format_int(long long v) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string format_uint(std::uint64_t v) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

// fixed 9 decimal places (routing-table probabilities)
std::string format_fixed9(double v);

double parse_double(std::string_view text, int line = 0);
long long parse_int(std::string_view text, int line = 0);
std::uint64_t parse_uint(std::string_view text, int line = 0);

std::string_view trim(std::string_view s);

}  // namespace modemflow::textio

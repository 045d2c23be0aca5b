#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace fracineq {

/// Shortest decimal that round-trips to the same double ("nan"/"inf" for
/// non-finite values).
std::string format_double(double value);

/// Strict decimal parse; the whole token must be consumed.
/// Throws ParseError naming the token.
double parse_double(std::string_view text);

/// Strict unsigned integer parse. Throws ParseError naming the token.
std::uint64_t parse_uint(std::string_view text);

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace fracineq

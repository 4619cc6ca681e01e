#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace minormax {

/// Shortest decimal that parses back to exactly the same double.
std::string shortest(double value);

/// Strict parse of a full decimal string; throws std::invalid_argument.
double parse_double(std::string_view text);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

std::string hex64(std::uint64_t value);

/// True when fd is a terminal and NO_COLOR is unset or empty.
bool color_enabled(int fd);

}  // namespace minormax

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace hsim {

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);
// Exact text form of a double (C99 hex float).
std::string hex_double(double v);

}  // namespace hsim

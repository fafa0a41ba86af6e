#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace immunet {

/// Shortest-ish decimal form used in every CSV ("%.12g").
std::string format_real(double x);

/// RFC 4180 field: quoted when it holds a comma, quote or line break.
std::string csv_field(std::string_view s);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view s) noexcept;

std::string hex64(std::uint64_t x);

}  // namespace immunet

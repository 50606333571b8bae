#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace snc::csv {

/// Shortest round-trip-safe text for a double ("inf"/"nan" spelled out).
std::string num(double v);
/// FNV-1a 64-bit hash, hex encoded; used to tag CSV headers with the config.
std::string fnv1a_hex(std::string_view data);

inline constexpr const char* kToolkitVersion = "1.0.0";

}  // namespace snc::csv

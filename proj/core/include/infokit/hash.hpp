#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "infokit/distribution.hpp"

namespace infokit {

// SHA-256 over the canonical byte layout
//   "IKDH" + u64 W (LE) + W * f64 probs (LE) + u8 has_values + values (LE).
// Used to bind compressed blocks and reports to the exact distribution.
std::array<std::uint8_t, 32> distribution_hash(const Distribution& d);

std::string hex_digest(const std::array<std::uint8_t, 32>& digest);

}  // namespace infokit

#pragma once

#include <cstdint>
#include <vector>

namespace infokit {

// A block of source letters; every letter must index into the alphabet of the
// distribution it is used with (validated at the point of use).
struct Sequence {
  std::vector<std::uint32_t> letters;

  Sequence() = default;
  explicit Sequence(std::vector<std::uint32_t> l) : letters(std::move(l)) {}

  std::size_t size() const { return letters.size(); }
  bool operator==(const Sequence&) const = default;
};

}  // namespace infokit

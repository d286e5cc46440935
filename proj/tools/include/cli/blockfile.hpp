#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "infokit/coding.hpp"
#include "infokit/rational.hpp"

namespace infokit::cli {

// On-disk compressed-block format.
//
// Layout (header little-endian, payload bits big-endian):
//   bytes 0..7    magic "IKBLK001"
//   u32           block length n
//   u32           rate numerator
//   u32           rate denominator
//   f64           epsilon (bits)
//   32 bytes      SHA-256 of the source distribution
//   u64           codeword count
//   payload       per codeword: 1 flag bit (1 = encodable), then
//                 ceil(n * rate) index bits, most significant first;
//                 bits packed MSB-first into bytes, final byte zero-padded.
struct BlockFileHeader {
  std::uint32_t n = 0;
  Rational rate;
  double epsilon = 0.0;
  std::array<std::uint8_t, 32> dist_hash{};
  std::uint64_t count = 0;
};

struct BlockFile {
  BlockFileHeader header;
  std::vector<Codeword> codewords;
};

inline constexpr char kBlockFileMagic[8] = {'I', 'K', 'B', 'L', 'K', '0', '0', '1'};

// Serializes header + codewords.  Every codeword occupies the same number of
// bits; a failed codeword is a 0 flag followed by zero index bits.
// Throws std::runtime_error on stream failure.
void write_block_file(std::ostream& out, const BlockFileHeader& header,
                      const std::vector<Codeword>& codewords);

// Parses and sanity-checks a block file.  Throws std::runtime_error on bad
// magic, truncation, or an implausible header.
BlockFile read_block_file(std::istream& in);

}  // namespace infokit::cli

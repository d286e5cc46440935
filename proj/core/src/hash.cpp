#include "infokit/hash.hpp"

#include <openssl/evp.h>

#include <bit>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace infokit {

namespace {

void append_u64_le(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void append_f64_le(std::vector<std::uint8_t>& out, double v) {
  append_u64_le(out, std::bit_cast<std::uint64_t>(v));
}

}  // namespace

std::array<std::uint8_t, 32> distribution_hash(const Distribution& d) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(13 + 16 * d.alphabet_size());
  bytes.insert(bytes.end(), {'I', 'K', 'D', 'H'});
  append_u64_le(bytes, d.alphabet_size());
  for (std::uint32_t i = 0; i < d.alphabet_size(); ++i) append_f64_le(bytes, d.prob(i));
  bytes.push_back(d.has_values() ? 1 : 0);
  if (d.has_values()) {
    for (std::uint32_t i = 0; i < d.alphabet_size(); ++i) append_f64_le(bytes, d.value(i));
  }

  std::array<std::uint8_t, 32> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != digest.size()) {
    throw std::runtime_error("distribution hash: SHA-256 computation failed");
  }
  return digest;
}

std::string hex_digest(const std::array<std::uint8_t, 32>& digest) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint8_t b : digest) {
    out.push_back(hex[b >> 4]);
    out.push_back(hex[b & 0xf]);
  }
  return out;
}

}  // namespace infokit

#include "cli/blockfile.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace infokit::cli {

namespace {

constexpr std::uint64_t kMaxPayloadBits = 1ull << 26;
constexpr std::uint64_t kMaxCodewords = 1ull << 32;

void append_u32_le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_u64_le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_f64_le(std::string& out, double v) {
  append_u64_le(out, std::bit_cast<std::uint64_t>(v));
}

class BitWriter {
 public:
  explicit BitWriter(std::string& out) : out_(out) {}

  void put(bool bit) {
    acc_ = static_cast<std::uint8_t>((acc_ << 1) | (bit ? 1 : 0));
    if (++filled_ == 8) {
      out_.push_back(static_cast<char>(acc_));
      acc_ = 0;
      filled_ = 0;
    }
  }

  void finish() {
    if (filled_ > 0) {
      out_.push_back(static_cast<char>(acc_ << (8 - filled_)));
      acc_ = 0;
      filled_ = 0;
    }
  }

 private:
  std::string& out_;
  std::uint8_t acc_ = 0;
  int filled_ = 0;
};

class ByteReader {
 public:
  explicit ByteReader(std::istream& in) : in_(in) {}

  void read(void* dst, std::size_t len) {
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in_.gcount()) != len) {
      throw std::runtime_error("block file: truncated");
    }
  }

  std::uint32_t read_u32_le() {
    std::uint8_t b[4];
    read(b, 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
  }

  std::uint64_t read_u64_le() {
    std::uint64_t v = 0;
    std::uint8_t b[8];
    read(b, 8);
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }

 private:
  std::istream& in_;
};

std::uint64_t checked_payload_bits(std::uint32_t n, const Rational& rate) {
  const std::uint64_t bits = ceil_mul(n, rate);
  if (bits > kMaxPayloadBits) {
    throw std::runtime_error("block file: implausible payload width (n or rate corrupt)");
  }
  return bits;
}

}  // namespace

void write_block_file(std::ostream& out, const BlockFileHeader& header,
                      const std::vector<Codeword>& codewords) {
  const std::uint64_t payload_bits = checked_payload_bits(header.n, header.rate);

  std::string bytes;
  bytes.append(kBlockFileMagic, sizeof(kBlockFileMagic));
  append_u32_le(bytes, header.n);
  append_u32_le(bytes, header.rate.num);
  append_u32_le(bytes, header.rate.den);
  append_f64_le(bytes, header.epsilon);
  bytes.append(reinterpret_cast<const char*>(header.dist_hash.data()),
               header.dist_hash.size());
  append_u64_le(bytes, codewords.size());

  BitWriter bits(bytes);
  for (const Codeword& cw : codewords) {
    bits.put(cw.ok);
    for (std::uint64_t i = payload_bits; i-- > 0;) {
      bits.put(cw.ok && boost::multiprecision::bit_test(cw.index, static_cast<unsigned>(i)));
    }
  }
  bits.finish();

  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("block file: write failed");
}

BlockFile read_block_file(std::istream& in) {
  ByteReader rd(in);

  char magic[8];
  rd.read(magic, sizeof(magic));
  if (std::memcmp(magic, kBlockFileMagic, sizeof(magic)) != 0) {
    throw std::runtime_error("block file: bad magic (not an IKBLK001 file)");
  }

  BlockFile file;
  file.header.n = rd.read_u32_le();
  const std::uint32_t num = rd.read_u32_le();
  const std::uint32_t den = rd.read_u32_le();
  if (den == 0 || num == 0 || file.header.n == 0) {
    throw std::runtime_error("block file: implausible header (zero n or rate)");
  }
  file.header.rate = Rational(num, den);
  file.header.epsilon = std::bit_cast<double>(rd.read_u64_le());
  rd.read(file.header.dist_hash.data(), file.header.dist_hash.size());
  file.header.count = rd.read_u64_le();
  if (file.header.count > kMaxCodewords) {
    throw std::runtime_error("block file: implausible codeword count");
  }

  const std::uint64_t payload_bits = checked_payload_bits(file.header.n, file.header.rate);
  const std::uint64_t total_bits = file.header.count * (payload_bits + 1);
  const std::uint64_t total_bytes = (total_bits + 7) / 8;
  std::string payload(total_bytes, '\0');
  if (total_bytes > 0) rd.read(payload.data(), total_bytes);

  std::size_t pos = 0;
  auto next_bit = [&payload, &pos]() -> bool {
    const std::size_t byte = pos / 8;
    const int shift = 7 - static_cast<int>(pos % 8);
    ++pos;
    return ((static_cast<std::uint8_t>(payload[byte]) >> shift) & 1) != 0;
  };

  file.codewords.reserve(static_cast<std::size_t>(file.header.count));
  for (std::uint64_t c = 0; c < file.header.count; ++c) {
    Codeword cw;
    cw.ok = next_bit();
    BigInt idx = 0;
    for (std::uint64_t i = 0; i < payload_bits; ++i) {
      idx <<= 1;
      if (next_bit()) idx |= 1;
    }
    cw.index = std::move(idx);
    file.codewords.push_back(std::move(cw));
  }
  return file;
}

}  // namespace infokit::cli

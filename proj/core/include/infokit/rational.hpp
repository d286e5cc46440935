#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace infokit {

// Exact code rate in payload bits per source letter.  Kept rational so that
// ceil(n*R) is computed without floating-point boundary surprises.
struct Rational {
  std::uint32_t num = 0;
  std::uint32_t den = 1;

  Rational() = default;
  Rational(std::uint32_t n, std::uint32_t d) : num(n), den(d) {
    if (d == 0) throw std::invalid_argument("rational: zero denominator");
    const std::uint32_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const { return static_cast<double>(num) / den; }

  bool operator==(const Rational&) const = default;
};

// ceil(n * r), exact in 64-bit arithmetic.
inline std::uint64_t ceil_mul(std::uint64_t n, Rational r) {
  const auto prod = static_cast<unsigned __int128>(n) * r.num;
  return static_cast<std::uint64_t>((prod + r.den - 1) / r.den);
}

}  // namespace infokit

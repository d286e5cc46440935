#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace infokit::detail {

using BigInt = boost::multiprecision::cpp_int;

// Exact C(n, k) by the multiplicative recurrence; every intermediate division
// is exact.
inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Exact multinomial n! / prod(counts!) as a product of binomials.
inline BigInt multinomial(std::uint64_t n, const std::vector<std::uint64_t>& counts) {
  BigInt r = 1;
  std::uint64_t rem = n;
  for (std::uint64_t c : counts) {
    r *= binomial(rem, c);
    rem -= c;
  }
  return r;
}

// log2 of a non-negative big integer; -infinity for 0.  The top 63 bits feed
// a double log2, so the relative error is a few ulp.
inline double log2_big(const BigInt& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  const std::uint64_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 63) return std::log2(static_cast<double>(x.convert_to<std::uint64_t>()));
  const std::uint64_t e = bits - 63;
  const BigInt top = x >> e;
  return static_cast<double>(e) + std::log2(static_cast<double>(top.convert_to<std::uint64_t>()));
}

// floor(2^x) for x >= 0, exact for integer x and within one part in 2^62
// otherwise (the fractional scale factor is truncated to 62 bits).
inline BigInt floor_pow2(double x) {
  if (x < 0) return 0;
  const double e = std::floor(x);
  const double f = x - e;
  const auto ei = static_cast<std::uint64_t>(e);
  if (f == 0.0) return BigInt(1) << ei;
  const auto m = static_cast<std::uint64_t>(std::floor(std::exp2(f) * 0x1p62));
  if (ei >= 62) return BigInt(m) << (ei - 62);
  return BigInt(m) >> (62 - ei);
}

// Per-class statistic: (1/n) sum_i counts[i] * weights[i], skipping zero
// counts so that +infinity weights on unused letters never poison the sum.
// Census and codebook paths must share this exact float expression so their
// class verdicts can never diverge.
inline double class_statistic(const std::vector<double>& weights,
                              const std::vector<std::uint64_t>& counts, std::uint64_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    s += static_cast<double>(counts[i]) * weights[i];
  }
  return s / static_cast<double>(n);
}

// Whether the number of compositions of n into w parts, C(n+w-1, w-1), stays
// within cap.  Computed in log space with headroom so no overflow occurs.
inline bool compositions_fit(std::uint64_t n, std::uint32_t w, std::uint64_t cap) {
  double log2_classes = 0.0;
  const double limit = std::log2(static_cast<double>(cap));
  for (std::uint32_t i = 1; i < w; ++i) {
    log2_classes += std::log2(static_cast<double>(n + i)) - std::log2(static_cast<double>(i));
    if (log2_classes > limit) return false;
  }
  return log2_classes <= limit;
}

// Enumerates compositions of n into w parts in lexicographically descending
// order of the counts vector.  fn receives each counts vector.
template <typename Fn>
void for_each_composition(std::uint64_t n, std::uint32_t w, Fn&& fn) {
  std::vector<std::uint64_t> counts(w, 0);
  auto rec = [&](auto&& self, std::uint32_t letter, std::uint64_t rem) -> void {
    if (letter + 1 == w) {
      counts[letter] = rem;
      fn(counts);
      return;
    }
    for (std::uint64_t c = rem + 1; c-- > 0;) {
      counts[letter] = c;
      self(self, letter + 1, rem - c);
    }
  };
  rec(rec, 0, n);
}

}  // namespace infokit::detail

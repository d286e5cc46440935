#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bigmath.hpp"
#include "infokit/distribution.hpp"
#include "infokit/errors.hpp"
#include "infokit/stats.hpp"

namespace infokit::detail {

// Probability mass of the `budget` most probable n-sequences under d.  All
// members of a type class share one probability, so the optimum takes whole
// classes from most to least probable plus an exact partial class at the
// boundary.  Masses accumulate in the linear domain from log2-domain class
// values with compensated summation.
inline double top_mass_with_budget(const Distribution& d, std::uint64_t n,
                                   const BigInt& budget) {
  if (n == 0) throw std::invalid_argument("top-set mass: n must be >= 1");
  if (budget <= 0) return 0.0;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  const std::uint32_t w = d.alphabet_size();
  const auto member_log2_prob = [&](const std::vector<std::uint64_t>& counts) {
    double lp = 0.0;
    for (std::uint32_t i = 0; i < counts.size(); ++i) {
      if (counts[i] == 0) continue;
      if (!d.in_support(i)) return -kInf;
      lp -= static_cast<double>(counts[i]) * d.surprisal_bits(i);
    }
    return lp;
  };

  if (w != 2) {
    if (!compositions_fit(n, w, 1u << 21)) {
      throw capacity_error("top-set mass: class enumeration exceeds the feasibility guard");
    }
    struct Cls {
      double lp;
      BigInt size;
    };
    std::vector<Cls> classes;
    for_each_composition(n, w, [&](const std::vector<std::uint64_t>& counts) {
      classes.push_back({member_log2_prob(counts), multinomial(n, counts)});
    });
    std::stable_sort(classes.begin(), classes.end(),
                     [](const Cls& a, const Cls& b) { return a.lp > b.lp; });
    BigInt cum = 0;
    KahanSum mass;
    for (const auto& c : classes) {
      if (cum + c.size <= budget) {
        if (c.lp != -kInf) mass.add(std::exp2(log2_big(c.size) + c.lp));
        cum += c.size;
        if (cum == budget) break;
      } else {
        const BigInt t = budget - cum;
        if (t > 0 && c.lp != -kInf) mass.add(std::exp2(log2_big(t) + c.lp));
        break;
      }
    }
    return mass.value();
  }

  if (n > 1000000) {
    throw capacity_error("top-set mass: binary path requires n <= 10^6");
  }
  // Binary: the most probable sequences carry the fewest copies of the rarer
  // letter, so classes ordered by rare-letter count are already sorted by
  // decreasing probability.
  const std::uint32_t rare = d.prob(0) <= d.prob(1) ? 0 : 1;
  const std::uint32_t common = 1 - rare;
  BigInt cum = 0;
  BigInt c = 1;  // C(n, 0)
  KahanSum mass;
  std::vector<std::uint64_t> counts(2, 0);
  for (std::uint64_t k = 0; k <= n; ++k) {
    counts[rare] = k;
    counts[common] = n - k;
    const double lp = member_log2_prob(counts);
    if (cum + c <= budget) {
      if (lp != -kInf) mass.add(std::exp2(log2_big(c) + lp));
      cum += c;
      if (cum == budget) break;
    } else {
      const BigInt t = budget - cum;
      if (t > 0 && lp != -kInf) mass.add(std::exp2(log2_big(t) + lp));
      break;
    }
    c *= n - k;
    c /= k + 1;
  }
  return mass.value();
}

}  // namespace infokit::detail

#include "infokit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace infokit {

namespace {
constexpr double kZ95 = 1.959963984540054;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("wilson interval: zero trials");
  if (successes > trials) throw std::invalid_argument("wilson interval: successes > trials");
  const double m = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / m;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / m;
  const double center = (phat + z2 / (2.0 * m)) / denom;
  const double half = kZ95 * std::sqrt(phat * (1.0 - phat) / m + z2 / (4.0 * m * m)) / denom;
  WilsonInterval w;
  // The score interval contains the point estimate; the clamps only absorb
  // last-ulp rounding at the boundaries.
  w.low = std::max(0.0, std::min(center - half, phat));
  w.high = std::min(1.0, std::max(center + half, phat));
  return w;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_distance_standard_normal(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("ks distance: empty sample");
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = normal_cdf(samples[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / m - f);
    d = std::max(d, f - static_cast<double>(i) / m);
  }
  return d;
}

}  // namespace infokit

#pragma once

#include <cstdint>
#include <vector>

namespace infokit {

// Compensated (Kahan) accumulator; addition order still matters, so callers
// that need determinism must feed it in a fixed order.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

// 95% Wilson score interval for a binomial proportion.  Always contains the
// point estimate successes/trials.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials);

// Standard normal CDF.
double normal_cdf(double x);

// Kolmogorov-Smirnov distance between the empirical distribution of `samples`
// and the standard normal.  Sorts a copy; samples must be non-empty.
double ks_distance_standard_normal(std::vector<double> samples);

}  // namespace infokit

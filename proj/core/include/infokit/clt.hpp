#pragma once

#include <complex>
#include <cstdint>

#include "infokit/distribution.hpp"

namespace infokit {

struct MomentPair {
  double expectation = 0.0;
  double variance = 0.0;   // >= 0
};

// phi(a) = sum_x P(x) e^{i a value(x)}.  Requires attached values.
// phi(0) == 1 exactly.
std::complex<double> characteristic_function(const Distribution& d, double a);

// Expectation and variance straight from the definition.
MomentPair direct_moments(const Distribution& d);

// Moments from the characteristic function:
//   E = -i d(ln phi)/da at 0,   D = -d^2(ln phi)/da^2 at 0,
// central differences with one Richardson extrapolation level (h and h/2).
// Throws std::domain_error if |phi| < 1/2 anywhere on the stencil (complex-log
// branch hazard): reduce h.
MomentPair moments_via_cf(const Distribution& d, double h = 1e-4);

// Independent sum of two value-carrying distributions; masses of equal sums
// merge.  The product support must stay within the capacity guard.
Distribution convolve_values(const Distribution& a, const Distribution& b);

struct CfProductCheck {
  std::complex<double> convolved;   // cf of the explicitly convolved sum
  std::complex<double> product;     // product of the component cfs
  double abs_difference = 0.0;
};

// Independence product rule at a single point a, both routes kept separate.
CfProductCheck cf_product_check(const std::vector<Distribution>& components, double a);

// Gaussian density for the sum of n i.i.d. copies:
//   (2 pi n D)^{-1/2} exp(-(l - nE)^2 / (2 n D)).
// n = 0 or D <= 0 (degenerate) -> std::domain_error.
double gaussian_sum_density(double l, std::uint64_t n, const MomentPair& m);

// KS distance between standardized sampled sums (n letters per trial) and the
// standard normal.  Deterministic for fixed seed/trials, independent of
// `threads`.  Degenerate distributions (D <= 0) -> std::domain_error.
double clt_empirical_distance(const Distribution& d, std::uint64_t n, std::uint64_t trials,
                              std::uint64_t seed, unsigned threads = 1);

}  // namespace infokit

#include "infokit/clt.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "infokit/errors.hpp"
#include "infokit/parallel.hpp"
#include "infokit/stats.hpp"

namespace infokit {

namespace {

constexpr std::uint64_t kConvolutionPairCap = 4000000;

void require_values(const Distribution& d) {
  if (!d.has_values()) {
    throw std::domain_error("characteristic function: distribution carries no letter values");
  }
}

// phi(a) - 1 assembled term by term as p ((cos(av) - 1) + i sin(av)) with
// cos(av) - 1 = -2 sin^2(av/2), so no near-1 cancellation ever happens; the
// log of phi then goes through a complex log1p.  This keeps ~1e-11 relative
// accuracy in the second differences at h = 1e-4, where a plain log(phi)
// would lose half the digits.
std::complex<double> cf_minus_one(const Distribution& d, double a) {
  KahanSum re, im;
  for (std::uint32_t i = 0; i < d.alphabet_size(); ++i) {
    if (!d.in_support(i)) continue;
    const double av = a * d.value(i);
    const double s = std::sin(0.5 * av);
    re.add(d.prob(i) * (-2.0 * s * s));
    im.add(d.prob(i) * std::sin(av));
  }
  return {re.value(), im.value()};
}

// log(1 + z) for complex z, stable for small |z|:
//   Re = log|1+z| = 0.5 log1p(2x + x^2 + y^2),  Im = atan2(y, 1+x).
std::complex<double> log1p_complex(std::complex<double> z) {
  const double x = z.real();
  const double y = z.imag();
  return {0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x)};
}

std::complex<double> log_cf(const Distribution& d, double a) {
  const std::complex<double> zm1 = cf_minus_one(d, a);
  if (std::abs(1.0 + zm1) < 0.5) {
    throw std::domain_error(
        "moments: |phi| < 1/2 on the difference stencil (complex-log branch hazard); "
        "reduce the step h");
  }
  return log1p_complex(zm1);
}

}  // namespace

std::complex<double> characteristic_function(const Distribution& d, double a) {
  require_values(d);
  if (a == 0.0) return {1.0, 0.0};
  const std::complex<double> zm1 = cf_minus_one(d, a);
  return {1.0 + zm1.real(), zm1.imag()};
}

MomentPair direct_moments(const Distribution& d) {
  require_values(d);
  KahanSum e;
  for (std::uint32_t i = 0; i < d.alphabet_size(); ++i) {
    if (d.in_support(i)) e.add(d.prob(i) * d.value(i));
  }
  const double mean = e.value();
  KahanSum v;
  for (std::uint32_t i = 0; i < d.alphabet_size(); ++i) {
    if (!d.in_support(i)) continue;
    const double dev = d.value(i) - mean;
    v.add(d.prob(i) * dev * dev);
  }
  return {mean, v.value()};
}

MomentPair moments_via_cf(const Distribution& d, double h) {
  require_values(d);
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("moments: step h must be finite and > 0");
  }

  // ln phi(-a) is exactly the conjugate of ln phi(a) (the per-term sin/cos
  // evaluations are sign-symmetric), but both sides are evaluated literally to
  // keep this a plain central-difference implementation.
  const auto first = [&](double step) {
    const double gp = log_cf(d, step).imag();
    const double gm = log_cf(d, -step).imag();
    return (gp - gm) / (2.0 * step);
  };
  const auto second = [&](double step) {
    // ln phi(0) = 0 exactly, so the centered second difference of the real
    // part needs only the two outer points.
    const double mp = log_cf(d, step).real();
    const double mm = log_cf(d, -step).real();
    return -(mp + mm) / (step * step);
  };

  // One Richardson level over the O(h^2) central differences.
  const double e_h = first(h);
  const double e_h2 = first(0.5 * h);
  const double d_h = second(h);
  const double d_h2 = second(0.5 * h);
  return {(4.0 * e_h2 - e_h) / 3.0, (4.0 * d_h2 - d_h) / 3.0};
}

Distribution convolve_values(const Distribution& a, const Distribution& b) {
  require_values(a);
  require_values(b);
  std::uint64_t support_a = 0, support_b = 0;
  for (std::uint32_t i = 0; i < a.alphabet_size(); ++i) support_a += a.in_support(i);
  for (std::uint32_t i = 0; i < b.alphabet_size(); ++i) support_b += b.in_support(i);
  if (support_a * support_b > kConvolutionPairCap) {
    throw capacity_error("convolution: support product exceeds the pair guard");
  }

  std::map<double, double> masses;   // sum value -> probability
  for (std::uint32_t i = 0; i < a.alphabet_size(); ++i) {
    if (!a.in_support(i)) continue;
    for (std::uint32_t j = 0; j < b.alphabet_size(); ++j) {
      if (!b.in_support(j)) continue;
      masses[a.value(i) + b.value(j)] += a.prob(i) * b.prob(j);
    }
  }

  std::vector<double> probs, values;
  probs.reserve(masses.size());
  values.reserve(masses.size());
  for (const auto& [value, prob] : masses) {
    values.push_back(value);
    probs.push_back(prob);
  }
  return Distribution(std::move(probs), std::move(values));
}

CfProductCheck cf_product_check(const std::vector<Distribution>& components, double a) {
  if (components.empty()) {
    throw std::invalid_argument("cf product check: at least one component required");
  }
  for (const Distribution& c : components) require_values(c);

  Distribution sum = components.front();
  for (std::size_t i = 1; i < components.size(); ++i) {
    sum = convolve_values(sum, components[i]);
  }

  CfProductCheck check;
  check.convolved = characteristic_function(sum, a);
  check.product = {1.0, 0.0};
  for (const Distribution& c : components) {
    check.product *= characteristic_function(c, a);
  }
  check.abs_difference = std::abs(check.convolved - check.product);
  return check;
}

double gaussian_sum_density(double l, std::uint64_t n, const MomentPair& m) {
  if (n == 0) throw std::domain_error("gaussian density: n must be >= 1");
  if (!(m.variance > 0.0) || !std::isfinite(m.variance)) {
    throw std::domain_error("gaussian density: degenerate distribution (variance must be > 0)");
  }
  const double nd = static_cast<double>(n) * m.variance;
  const double dev = l - static_cast<double>(n) * m.expectation;
  return std::exp(-(dev * dev) / (2.0 * nd)) / std::sqrt(2.0 * std::numbers::pi * nd);
}

double clt_empirical_distance(const Distribution& d, std::uint64_t n, std::uint64_t trials,
                              std::uint64_t seed, unsigned threads) {
  require_values(d);
  if (n == 0) throw std::invalid_argument("clt distance: n must be >= 1");
  if (trials == 0) throw std::invalid_argument("clt distance: trials must be >= 1");
  const MomentPair m = direct_moments(d);
  if (!(m.variance > 0.0)) {
    throw std::domain_error("clt distance: degenerate distribution (variance must be > 0)");
  }
  const double mu = static_cast<double>(n) * m.expectation;
  const double sigma = std::sqrt(static_cast<double>(n) * m.variance);

  const auto blocks = run_trial_blocks<std::vector<double>>(
      trials, threads, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<double> out;
        out.reserve(end - begin);
        for (std::uint64_t trial = begin; trial < end; ++trial) {
          TrialRng rng(seed, trial);
          KahanSum sum;
          for (std::uint64_t i = 0; i < n; ++i) sum.add(d.value(d.sample(rng)));
          out.push_back((sum.value() - mu) / sigma);
        }
        return out;
      });

  std::vector<double> samples;
  samples.reserve(trials);
  for (const auto& b : blocks) samples.insert(samples.end(), b.begin(), b.end());
  return ks_distance_standard_normal(std::move(samples));
}

}  // namespace infokit

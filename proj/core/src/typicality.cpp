#include "infokit/typicality.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bigmath.hpp"
#include "infokit/parallel.hpp"
#include "infokit/stats.hpp"
#include "topmass.hpp"

namespace infokit {

namespace {

constexpr std::uint64_t kBinaryClassCap = 1000000;   // binary type classes: n cap
constexpr std::uint64_t kCompositionCap = 1u << 21;  // general type classes
constexpr double kExhaustiveCapLog2 = 24.0;          // W^n <= 2^24

const double kInf = std::numeric_limits<double>::infinity();

// Inclusive typicality comparison; the probability-sandwich form divides the
// log-probability by n first and lands on the identical comparison, so the
// two routes agree bit for bit.
bool within(double statistic, double reference, double epsilon) {
  return std::fabs(statistic - reference) <= epsilon;
}

double checked_rate(const Distribution& d, const Sequence& s, const std::vector<double>& weights) {
  if (s.size() == 0) throw std::domain_error("statistic: empty sequence");
  KahanSum acc;
  for (std::uint32_t letter : s.letters) {
    if (letter >= d.alphabet_size()) {
      throw std::invalid_argument("sequence: letter outside the alphabet");
    }
    if (!d.in_support(letter)) {
      throw std::domain_error("statistic: letter outside the support");
    }
    acc.add(weights[letter]);
  }
  return acc.value() / static_cast<double>(s.size());
}

bool exhaustive_feasible(std::uint32_t w, std::uint64_t n) {
  return static_cast<double>(n) * std::log2(static_cast<double>(w)) <= kExhaustiveCapLog2;
}

bool type_class_feasible(std::uint32_t w, std::uint64_t n) {
  if (w == 2) return n <= kBinaryClassCap;
  return detail::compositions_fit(n, w, kCompositionCap);
}

// Per-class log2 probability of one member sequence; -infinity if the class
// touches a zero-probability letter.
double class_member_log2_prob(const Distribution& d, const std::vector<std::uint64_t>& counts) {
  double lp = 0.0;
  for (std::uint32_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    if (!d.in_support(i)) return -kInf;
    lp -= static_cast<double>(counts[i]) * d.surprisal_bits(i);
  }
  return lp;
}

SetCensus census_type_class(const Distribution& d, std::uint64_t n, double epsilon,
                            double reference, const std::vector<double>& weights) {
  SetCensus census;
  census.n = n;
  census.epsilon = epsilon;
  KahanSum mass;

  if (d.alphabet_size() == 2) {
    // Classes are ones-counts; the statistic is linear in k, so qualifying
    // classes form a contiguous interval.  Count them exactly with the
    // multiplicative recurrence, walking only the interval.
    std::uint64_t lo = n + 1, hi = 0;
    std::vector<std::uint64_t> counts(2);
    for (std::uint64_t k = 0; k <= n; ++k) {
      counts[0] = n - k;
      counts[1] = k;
      if (within(detail::class_statistic(weights, counts, n), reference, epsilon)) {
        lo = std::min(lo, k);
        hi = std::max(hi, k);
      }
    }
    if (lo <= hi) {
      detail::BigInt c = detail::binomial(n, lo);
      for (std::uint64_t k = lo;; ++k) {
        counts[0] = n - k;
        counts[1] = k;
        census.count += c;
        const double lp = class_member_log2_prob(d, counts);
        if (lp != -kInf) mass.add(std::exp2(detail::log2_big(c) + lp));
        if (k == hi) break;
        c *= n - k;
        c /= k + 1;
      }
    }
  } else {
    detail::for_each_composition(n, d.alphabet_size(), [&](const std::vector<std::uint64_t>& counts) {
      if (!within(detail::class_statistic(weights, counts, n), reference, epsilon)) return;
      const detail::BigInt size = detail::multinomial(n, counts);
      census.count += size;
      const double lp = class_member_log2_prob(d, counts);
      if (lp != -kInf) mass.add(std::exp2(detail::log2_big(size) + lp));
    });
  }

  census.mass = mass.value();
  census.log2_count = detail::log2_big(census.count);
  return census;
}

SetCensus census_exhaustive(const Distribution& d, std::uint64_t n, double epsilon,
                            double reference, const std::vector<double>& weights) {
  SetCensus census;
  census.n = n;
  census.epsilon = epsilon;
  KahanSum mass;

  const std::uint32_t w = d.alphabet_size();
  std::vector<std::uint32_t> letters(n, 0);
  for (;;) {
    double sum = 0.0;
    double lp = 0.0;
    for (std::uint32_t letter : letters) {
      sum += weights[letter];
      lp -= d.surprisal_bits(letter);
    }
    if (within(sum / static_cast<double>(n), reference, epsilon)) {
      ++census.count;
      mass.add(std::exp2(lp));
    }
    // Odometer step.
    std::size_t pos = n;
    while (pos > 0 && letters[pos - 1] == w - 1) letters[--pos] = 0;
    if (pos == 0) break;
    ++letters[pos - 1];
  }

  census.mass = mass.value();
  census.log2_count = detail::log2_big(census.count);
  return census;
}

SetCensus census_by_weights(const Distribution& d, std::uint64_t n, double epsilon,
                            double reference, const std::vector<double>& weights,
                            EnumerationMethod method) {
  if (n == 0) throw std::invalid_argument("census: n must be >= 1");
  if (epsilon < 0.0 || !std::isfinite(epsilon)) {
    throw std::invalid_argument("census: epsilon must be finite and >= 0");
  }
  const std::uint32_t w = d.alphabet_size();
  switch (method) {
    case EnumerationMethod::TypeClass:
      if (!type_class_feasible(w, n)) {
        throw capacity_error("census: type-class walk exceeds the feasibility guard");
      }
      return census_type_class(d, n, epsilon, reference, weights);
    case EnumerationMethod::Exhaustive:
      if (!exhaustive_feasible(w, n)) {
        throw capacity_error("census: exhaustive walk requires W^n <= 2^24");
      }
      return census_exhaustive(d, n, epsilon, reference, weights);
    case EnumerationMethod::Auto:
      if (type_class_feasible(w, n)) return census_type_class(d, n, epsilon, reference, weights);
      if (exhaustive_feasible(w, n)) return census_exhaustive(d, n, epsilon, reference, weights);
      throw capacity_error("census: no feasible enumeration path at this size");
  }
  throw std::logic_error("census: unknown enumeration method");
}

struct TrialBlock {
  std::uint64_t typical = 0;
  double dev_sum = 0.0, dev_c = 0.0;     // Kahan parts: sum of (stat - ref)
  double dev2_sum = 0.0, dev2_c = 0.0;   // Kahan parts: sum of (stat - ref)^2
};

// Shared Monte Carlo core: per-trial mean of per-letter weights, compared to
// the reference.  Block layout is fixed, so results do not depend on the
// worker count.
std::vector<TrialBlock> run_weight_trials(const Distribution& d, std::uint64_t n,
                                          double epsilon, double reference,
                                          const std::vector<double>& weights,
                                          std::uint64_t trials, std::uint64_t seed,
                                          unsigned threads) {
  if (n == 0) throw std::invalid_argument("estimate: n must be >= 1");
  if (trials == 0) throw std::invalid_argument("estimate: trials must be >= 1");
  return run_trial_blocks<TrialBlock>(trials, threads, [&](std::uint64_t begin, std::uint64_t end) {
    TrialBlock b;
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      TrialRng rng(seed, trial);
      KahanSum acc;
      for (std::uint64_t i = 0; i < n; ++i) acc.add(weights[d.sample(rng)]);
      const double stat = acc.value() / static_cast<double>(n);
      if (within(stat, reference, epsilon)) ++b.typical;
      const double dev = stat - reference;
      double y = dev - b.dev_c;
      double t = b.dev_sum + y;
      b.dev_c = (t - b.dev_sum) - y;
      b.dev_sum = t;
      y = dev * dev - b.dev2_c;
      t = b.dev2_sum + y;
      b.dev2_c = (t - b.dev2_sum) - y;
      b.dev2_sum = t;
    }
    return b;
  });
}

}  // namespace

double empirical_entropy_rate(const Distribution& d, const Sequence& s) {
  std::vector<double> weights(d.alphabet_size());
  for (std::uint32_t i = 0; i < d.alphabet_size(); ++i) weights[i] = d.surprisal_bits(i);
  return checked_rate(d, s, weights);
}

TypicalityReport is_epsilon_typical(const Distribution& d, const Sequence& s, double epsilon) {
  if (epsilon < 0.0 || !std::isfinite(epsilon)) {
    throw std::invalid_argument("typicality: epsilon must be finite and >= 0");
  }
  TypicalityReport r;
  r.n = s.size();
  r.epsilon = epsilon;
  r.reference = shannon_entropy(d, Units::Bits).value;
  r.statistic = empirical_entropy_rate(d, s);
  r.is_typical = within(r.statistic, r.reference, epsilon);
  return r;
}

SetCensus enumerate_typical_set(const Distribution& d, std::uint64_t n, double epsilon,
                                EnumerationMethod method) {
  std::vector<double> weights(d.alphabet_size());
  for (std::uint32_t i = 0; i < d.alphabet_size(); ++i) weights[i] = d.surprisal_bits(i);
  const double reference = shannon_entropy(d, Units::Bits).value;
  return census_by_weights(d, n, epsilon, reference, weights, method);
}

TypicalSetBounds typical_set_bounds(double entropy_bits, std::uint64_t n, double epsilon,
                                    double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("bounds: delta must lie in (0, 1)");
  }
  if (epsilon < 0.0 || !std::isfinite(epsilon)) {
    throw std::invalid_argument("bounds: epsilon must be finite and >= 0");
  }
  TypicalSetBounds b;
  b.lower = std::log2(1.0 - delta) + static_cast<double>(n) * (entropy_bits - epsilon);
  b.upper = static_cast<double>(n) * (entropy_bits + epsilon);
  return b;
}

MonteCarloEstimate estimate_typicality_probability(const Distribution& d, std::uint64_t n,
                                                   double epsilon, std::uint64_t trials,
                                                   std::uint64_t seed, unsigned threads) {
  if (epsilon < 0.0 || !std::isfinite(epsilon)) {
    throw std::invalid_argument("estimate: epsilon must be finite and >= 0");
  }
  std::vector<double> weights(d.alphabet_size());
  for (std::uint32_t i = 0; i < d.alphabet_size(); ++i) weights[i] = d.surprisal_bits(i);
  const double reference = shannon_entropy(d, Units::Bits).value;
  const auto blocks = run_weight_trials(d, n, epsilon, reference, weights, trials, seed, threads);

  std::uint64_t typical = 0;
  for (const auto& b : blocks) typical += b.typical;
  MonteCarloEstimate e;
  e.trials = trials;
  e.seed = seed;
  e.estimate = static_cast<double>(typical) / static_cast<double>(trials);
  const auto ci = wilson_interval(typical, trials);
  e.ci_low = ci.low;
  e.ci_high = ci.high;
  return e;
}

double top_set_mass(const Distribution& d, std::uint64_t n, double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("top-set mass: rate must be finite and > 0");
  }
  return detail::top_mass_with_budget(d, n, detail::floor_pow2(static_cast<double>(n) * rate));
}

double q_typicality_statistic(const Distribution& d, const Sequence& s, const QParam& qp) {
  std::vector<double> weights(d.alphabet_size());
  for (std::uint32_t i = 0; i < d.alphabet_size(); ++i) {
    weights[i] = d.in_support(i) ? q_surprisal(d.prob(i), qp) : kInf;
  }
  return checked_rate(d, s, weights);
}

QConcentrationEstimate estimate_q_concentration(const Distribution& d, std::uint64_t n,
                                                double epsilon, const QParam& qp,
                                                std::uint64_t trials, std::uint64_t seed,
                                                unsigned threads) {
  if (epsilon < 0.0 || !std::isfinite(epsilon)) {
    throw std::invalid_argument("estimate: epsilon must be finite and >= 0");
  }
  std::vector<double> weights(d.alphabet_size());
  for (std::uint32_t i = 0; i < d.alphabet_size(); ++i) {
    weights[i] = d.in_support(i) ? q_surprisal(d.prob(i), qp) : kInf;
  }
  const double sq = tsallis_entropy(d, qp).value;
  const auto blocks = run_weight_trials(d, n, epsilon, sq, weights, trials, seed, threads);

  std::uint64_t typical = 0;
  KahanSum dev, dev2;
  for (const auto& b : blocks) {
    typical += b.typical;
    dev.add(b.dev_sum);
    dev2.add(b.dev2_sum);
  }
  QConcentrationEstimate e;
  e.reference = sq;
  e.mc.trials = trials;
  e.mc.seed = seed;
  e.mc.estimate = static_cast<double>(typical) / static_cast<double>(trials);
  const auto ci = wilson_interval(typical, trials);
  e.mc.ci_low = ci.low;
  e.mc.ci_high = ci.high;

  const double m = static_cast<double>(trials);
  const double mean_dev = dev.value() / m;
  if (trials > 1) {
    e.empirical_variance = (dev2.value() - m * mean_dev * mean_dev) / (m - 1.0);
  }
  KahanSum dacc;
  for (std::uint32_t i = 0; i < d.alphabet_size(); ++i) {
    if (d.in_support(i)) dacc.add(d.prob(i) * weights[i] * weights[i]);
  }
  e.dxi = dacc.value() - sq * sq;
  e.predicted_variance = e.dxi / static_cast<double>(n);
  return e;
}

SetCensus q_set_census(const Distribution& d, std::uint64_t n, double epsilon,
                       const QParam& qp, EnumerationMethod method) {
  std::vector<double> weights(d.alphabet_size());
  for (std::uint32_t i = 0; i < d.alphabet_size(); ++i) {
    weights[i] = d.in_support(i) ? q_surprisal(d.prob(i), qp) : kInf;
  }
  const double sq = tsallis_entropy(d, qp).value;
  return census_by_weights(d, n, epsilon, sq, weights, method);
}

}  // namespace infokit

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>

#include "infokit/distribution.hpp"
#include "infokit/entropy.hpp"
#include "infokit/sequence.hpp"

namespace infokit {

using BigInt = boost::multiprecision::cpp_int;

// ============================================================================
// Report types
// ============================================================================

// Verdict of one typicality test.  is_typical holds exactly when
// |statistic - reference| <= epsilon (inclusive); the equivalent probability
// sandwich 2^{-n(ref+eps)} <= P(s) <= 2^{-n(ref-eps)} is the same comparison
// after dividing the log-probability by n, so the two forms cannot disagree.
struct TypicalityReport {
  double statistic = 0.0;   // per-letter statistic (entropy rate or q-statistic)
  double reference = 0.0;   // H(d) in bits, or S_q in k-units
  double epsilon = 0.0;
  bool is_typical = false;
  std::uint64_t n = 0;
};

// Exact census of a qualifying set: integer count, total probability mass,
// and (when a confidence level delta is attached) the log2-domain bounds the
// count is expected to satisfy.
struct SetCensus {
  std::uint64_t n = 0;
  double epsilon = 0.0;
  BigInt count;
  double log2_count = 0.0;   // -infinity for an empty set
  double mass = 0.0;
  std::optional<double> lower_bound;   // log2 domain
  std::optional<double> upper_bound;   // log2 domain
};

struct MonteCarloEstimate {
  double estimate = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double ci_low = 0.0;    // 95% Wilson
  double ci_high = 1.0;
};

// Concentration run for the q-statistic: the estimate plus the measured
// variance of the statistic against the closed-form prediction D(xi)/n.
struct QConcentrationEstimate {
  MonteCarloEstimate mc;
  double reference = 0.0;            // S_q in k-units
  double empirical_variance = 0.0;   // sample variance of the per-trial statistic
  double predicted_variance = 0.0;   // D(xi) / n
  double dxi = 0.0;                  // per-letter variance of the q-surprisal
};

struct TypicalSetBounds {
  double lower = 0.0;   // log2 (1 - delta) + n (H - eps)
  double upper = 0.0;   // n (H + eps)
};

enum class EnumerationMethod {
  Auto,        // type classes, falling back to exhaustive for tiny cases
  TypeClass,   // composition walk; binary alphabets up to n = 10^6
  Exhaustive,  // all W^n sequences; requires W^n <= 2^24
};

// ============================================================================
// Operations
// ============================================================================

// Empirical entropy rate -(1/n) log2 P(s) in bits per letter.  Domain errors:
// empty sequence, or a letter outside the support of d.
double empirical_entropy_rate(const Distribution& d, const Sequence& s);

// Epsilon-typicality verdict for s under d (inclusive comparison).
TypicalityReport is_epsilon_typical(const Distribution& d, const Sequence& s, double epsilon);

// Exact count and mass of the epsilon-typical subset of W^n.
SetCensus enumerate_typical_set(const Distribution& d, std::uint64_t n, double epsilon,
                                EnumerationMethod method = EnumerationMethod::Auto);

// Log2-domain count bounds at confidence delta:
//   lower = log2(1 - delta) + n (H - eps),  upper = n (H + eps).
// The lower bound is meaningful once P(typical) >= 1 - delta.
TypicalSetBounds typical_set_bounds(double entropy_bits, std::uint64_t n, double epsilon,
                                    double delta);

// Monte Carlo estimate of P(s typical) over i.i.d. blocks of length n.
// Deterministic for fixed (seed, trials) regardless of `threads`.
MonteCarloEstimate estimate_typicality_probability(const Distribution& d, std::uint64_t n,
                                                   double epsilon, std::uint64_t trials,
                                                   std::uint64_t seed, unsigned threads = 1);

// Total probability mass of the floor(2^{n*rate}) most probable sequences:
// the best any collection that small can capture.  Works over whole type
// classes (all members of a class share one probability) ordered from most to
// least probable, with an exact partial-class remainder at the budget edge.
// Binary alphabets allow any n <= 10^6; other alphabets must satisfy the
// composition-count guard of EnumerationMethod::TypeClass.
double top_set_mass(const Distribution& d, std::uint64_t n, double rate);

// Mean q-surprisal of the letters of s (the q-statistic).  Same domain errors
// as empirical_entropy_rate.
double q_typicality_statistic(const Distribution& d, const Sequence& s, const QParam& qp);

// Concentration of the q-statistic around S_q: estimates P(|stat - S_q| <= eps)
// with eps in the same k-units as S_q (nats at k = 1), and reports the
// empirical variance of the statistic next to the closed-form D(xi)/n.
QConcentrationEstimate estimate_q_concentration(const Distribution& d, std::uint64_t n,
                                                double epsilon, const QParam& qp,
                                                std::uint64_t trials, std::uint64_t seed,
                                                unsigned threads = 1);

// Census of {s : |q-statistic(s) - S_q| <= eps}.  Exploratory: reported next
// to Property-2-shaped candidate bounds by the workbench, but no bound is
// asserted here.
SetCensus q_set_census(const Distribution& d, std::uint64_t n, double epsilon,
                       const QParam& qp, EnumerationMethod method = EnumerationMethod::Auto);

}  // namespace infokit

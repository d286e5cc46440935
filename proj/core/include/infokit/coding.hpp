#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "infokit/distribution.hpp"
#include "infokit/rational.hpp"
#include "infokit/sequence.hpp"
#include "infokit/typicality.hpp"

namespace infokit {

struct CodeParams {
  std::uint32_t n = 0;
  Rational rate;          // payload bits per letter
  double epsilon = 0.0;   // typicality tolerance used for feasibility

  std::uint64_t payload_bits() const { return ceil_mul(n, rate); }
};

// Fixed-width codeword: one ok flag plus exactly ceil(n*R) payload bits.
// ok = false declares an encoding failure; its payload is all zeros.
struct Codeword {
  bool ok = false;
  BigInt index;   // < 2^payload_bits; 0 when !ok
};

struct CodecStats {
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;
  double empirical_reliability = 0.0;
};

/**
 * Enumerative fixed-rate block code over type classes.
 *
 * Construction fails (rate_infeasible_error, naming the minimum workable
 * rate) unless the epsilon-typical set fits into 2^ceil(nR) indices.  The
 * coded set is then the typical classes extended class-by-class toward the
 * higher-probability side first, as long as whole classes fit the index
 * budget, so the payload width actually paid for is used.  Coded classes are
 * indexed in composition-lex-descending order (binary: ascending ones-count),
 * each class internally by lexicographic rank, all in exact big-integer
 * arithmetic; nothing is ever materialized per-sequence on binary alphabets.
 */
class Codebook {
 public:
  static Codebook build(const Distribution& d, const CodeParams& params);

  const CodeParams& params() const { return params_; }
  std::uint64_t payload_bits() const { return params_.payload_bits(); }

  const BigInt& coded_count() const { return coded_count_; }
  const BigInt& typical_count() const { return typical_count_; }

  // True when the class of s falls inside the coded interval.
  bool covers(const Sequence& s) const;

  // ok = covers(s); payload = exact index, big-endian when serialized.
  Codeword encode(const Sequence& s) const;

  // ok = false -> declared failure (nullopt), never a fabricated sequence.
  // An index outside the coded range is a malformed codeword
  // (std::invalid_argument).
  std::optional<Sequence> decode(const Codeword& w) const;

  // Coded interval in per-class terms, for reports: binary alphabets use
  // ones-count bounds [coded_lo, coded_hi].
  std::uint64_t coded_lo() const { return coded_lo_; }
  std::uint64_t coded_hi() const { return coded_hi_; }
  std::uint64_t typical_lo() const { return typical_lo_; }
  std::uint64_t typical_hi() const { return typical_hi_; }

 private:
  Codebook() = default;

  struct ClassEntry {
    std::vector<std::uint64_t> counts;   // composition (letter histogram)
    BigInt size;
    BigInt offset;   // cumulative count of coded classes before this one
  };

  const ClassEntry* find_class(const std::vector<std::uint64_t>& counts) const;

  CodeParams params_;
  std::uint32_t w_ = 0;
  bool binary_ = false;
  // Binary fast path: coded ones-interval and per-class offsets.
  std::uint64_t coded_lo_ = 0, coded_hi_ = 0;
  std::uint64_t typical_lo_ = 0, typical_hi_ = 0;
  std::vector<BigInt> bin_sizes_;     // C(n, k) for k in [coded_lo, coded_hi]
  std::vector<BigInt> bin_offsets_;   // cumulative, same indexing
  // General path: coded classes in index order.
  std::vector<ClassEntry> classes_;
  std::map<std::vector<std::uint64_t>, std::size_t> class_index_;
  BigInt coded_count_;
  BigInt typical_count_;
};

struct ReliabilityReport {
  CodecStats stats;
  MonteCarloEstimate estimate;   // estimate == empirical_reliability
};

// Monte Carlo round-trip reliability: sample i.i.d. blocks, encode, decode,
// and count exact reconstructions.  Deterministic for fixed seed and trials,
// independent of `threads`.
ReliabilityReport reliability_estimate(const Distribution& d, const CodeParams& params,
                                       std::uint64_t trials, std::uint64_t seed,
                                       unsigned threads = 1);

struct RateSweepRow {
  Rational rate;
  bool feasible = false;
  double epsilon_used = 0.0;
  std::uint64_t payload_bits = 0;
  // Feasible rows:
  double reliability = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  // Infeasible rows:
  double min_feasible_rate = 0.0;
  // Mass of the floor(2^{nR}) most probable sequences: an upper bound on the
  // reliability of any rate-R scheme, reported for every row.
  double best_possible_mass = 0.0;
};

// Reliability as a function of rate across the entropy threshold.  Policy:
// epsilon = (R - H)/2 for R > H, else `converse_epsilon`.
std::vector<RateSweepRow> rate_sweep(const Distribution& d, std::uint32_t n,
                                     const std::vector<Rational>& rates,
                                     std::uint64_t trials, std::uint64_t seed,
                                     double converse_epsilon = 0.01,
                                     unsigned threads = 1);

// Exact-budget variant of top_set_mass for rational rates.
double top_set_mass_exact_budget(const Distribution& d, std::uint64_t n, Rational rate);

}  // namespace infokit

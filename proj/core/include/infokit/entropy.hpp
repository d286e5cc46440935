#pragma once

#include <cstdint>
#include <vector>

#include "infokit/distribution.hpp"
#include "infokit/sequence.hpp"

namespace infokit {

enum class Units { Bits, Nats, TsallisK };

struct EntropyValue {
  double value = 0.0;
  Units units = Units::Bits;
};

/// Entropic-index parameter for the nonextensive family.  q > 0 is required
/// (variances of q-surprisals must exist on the support); k > 0 scales the
/// entropy unit and defaults to 1.
struct QParam {
  double q;
  double k;
  explicit QParam(double q_, double k_ = 1.0);
};

/// Binary entropy in bits; p in [0, 1], with 0 log 0 = 0.
double binary_entropy(double p);

/// Shannon entropy of d, in bits or nats.  Zero-probability letters
/// contribute nothing.
EntropyValue shannon_entropy(const Distribution& d, Units units = Units::Bits);

/// Nonextensive entropy S_q = k (1 - sum_i p_i^q) / (q - 1).  At q = 1 this
/// routes to k times the Shannon entropy in nats (the q -> 1 limit).
EntropyValue tsallis_entropy(const Distribution& d, const QParam& qp);

/// Deformed surprisal xi = k (1 - p^(q-1)) / (q - 1); the q -> 1 limit is
/// -k ln p.  Satisfies E[xi] = S_q over any distribution.  p must lie in
/// (0, 1]; p <= 0 is a domain error (letter outside the support).
double q_surprisal(double p, const QParam& qp);

/// Two-term Stirling estimate n ln n - n of ln n!; returns 0 for n in {0, 1}.
double stirling_log_factorial(std::uint64_t n);

/// ln n! by direct compensated summation (cross-check companion).
double exact_log_factorial(std::uint64_t n);

/// First-order estimate of the log2-count of typical sequences: n * H(d) bits.
double typical_count_estimate(std::uint64_t n, const Distribution& d);

/// Exact log2 of the multinomial coefficient n! / prod_i(composition_i!).
/// The composition entries must sum to n.
double exact_log_multinomial(std::uint64_t n, const std::vector<std::uint64_t>& composition);

struct SequenceLogProb {
  double log2_value = 0.0;   // -infinity when a letter falls outside the support
  bool in_support = true;    // distinct flag so callers need not test for -inf
};

/// log2 P(s) under i.i.d. draws from d, computed in log space only (per-letter
/// surprisal sums; the linear-domain product underflows long before n = 1000).
/// Empty sequence -> 0.  Letters must index the alphabet.
SequenceLogProb sequence_log_probability(const Distribution& d, const Sequence& s);

}  // namespace infokit

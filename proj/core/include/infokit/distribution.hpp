#pragma once

#include <cstdint>
#include <vector>

#include "infokit/rng.hpp"

namespace infokit {

/**
 * Finite discrete probability distribution over the alphabet {0, ..., W-1}.
 *
 * Invariants, enforced at construction:
 *  - at least one letter, all probabilities finite and >= 0;
 *  - probabilities sum to 1 within 1e-12;
 *  - when letter values are attached (for sums of random variables), there is
 *    exactly one value per letter.
 *
 * Per-letter surprisals are cached at construction; zero-probability letters
 * carry +infinity and are never produced by sample().
 */
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);
  Distribution(std::vector<double> probs, std::vector<double> values);

  static Distribution uniform(std::uint32_t w);

  std::uint32_t alphabet_size() const { return static_cast<std::uint32_t>(probs_.size()); }
  double prob(std::uint32_t letter) const { return probs_[letter]; }
  const std::vector<double>& probs() const { return probs_; }

  bool has_values() const { return has_values_; }
  double value(std::uint32_t letter) const { return values_[letter]; }
  const std::vector<double>& values() const;

  // -log2 p(letter) and -ln p(letter); +infinity outside the support.
  double surprisal_bits(std::uint32_t letter) const { return surprisal_bits_[letter]; }
  double surprisal_nats(std::uint32_t letter) const { return surprisal_nats_[letter]; }
  bool in_support(std::uint32_t letter) const { return probs_[letter] > 0.0; }

  // Inverse-CDF draw; consumes exactly one uniform variate.
  std::uint32_t sample(TrialRng& rng) const;

  bool operator==(const Distribution& other) const {
    return probs_ == other.probs_ && has_values_ == other.has_values_ &&
           values_ == other.values_;
  }

 private:
  void init();

  std::vector<double> probs_;
  std::vector<double> values_;
  bool has_values_ = false;
  std::vector<double> surprisal_bits_;
  std::vector<double> surprisal_nats_;
  std::vector<double> cum_;              // cumulative probability, support letters only
  std::vector<std::uint32_t> support_;   // letters matching cum_
};

// Independent product A x B as a distribution over the W_A * W_B pair alphabet
// (pair (a, b) maps to letter a * W_B + b).  Values, if any, are dropped.
Distribution product_distribution(const Distribution& a, const Distribution& b);

}  // namespace infokit

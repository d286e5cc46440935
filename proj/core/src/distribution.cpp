#include "infokit/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace infokit {

namespace {
constexpr double kSumTolerance = 1e-12;
}

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) { init(); }

Distribution::Distribution(std::vector<double> probs, std::vector<double> values)
    : probs_(std::move(probs)), values_(std::move(values)), has_values_(true) {
  if (values_.size() != probs_.size()) {
    throw std::invalid_argument("distribution: one value per letter required");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("distribution: non-finite value");
  }
  init();
}

void Distribution::init() {
  if (probs_.empty()) throw std::invalid_argument("distribution: empty alphabet");
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("distribution: probabilities must be finite and >= 0");
    }
    sum += p;
  }
  if (std::fabs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("distribution: probabilities must sum to 1 within 1e-12");
  }

  const double inf = std::numeric_limits<double>::infinity();
  surprisal_bits_.resize(probs_.size());
  surprisal_nats_.resize(probs_.size());
  double cum = 0.0;
  for (std::uint32_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    surprisal_bits_[i] = p > 0.0 ? -std::log2(p) : inf;
    surprisal_nats_[i] = p > 0.0 ? -std::log(p) : inf;
    if (p > 0.0) {
      cum += p;
      cum_.push_back(cum);
      support_.push_back(i);
    }
  }
  if (support_.empty()) throw std::invalid_argument("distribution: empty support");
  cum_.back() = 1.0;   // guard against rounding in the running sum
}

Distribution Distribution::uniform(std::uint32_t w) {
  if (w == 0) throw std::invalid_argument("distribution: empty alphabet");
  return Distribution(std::vector<double>(w, 1.0 / w));
}

const std::vector<double>& Distribution::values() const {
  if (!has_values_) throw std::logic_error("distribution: no values attached");
  return values_;
}

std::uint32_t Distribution::sample(TrialRng& rng) const {
  const double u = rng.next_double();
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  const std::size_t idx = it == cum_.end() ? cum_.size() - 1 : static_cast<std::size_t>(it - cum_.begin());
  return support_[idx];
}

Distribution product_distribution(const Distribution& a, const Distribution& b) {
  std::vector<double> probs;
  probs.reserve(static_cast<std::size_t>(a.alphabet_size()) * b.alphabet_size());
  for (std::uint32_t i = 0; i < a.alphabet_size(); ++i) {
    for (std::uint32_t j = 0; j < b.alphabet_size(); ++j) {
      probs.push_back(a.prob(i) * b.prob(j));
    }
  }
  return Distribution(std::move(probs));
}

}  // namespace infokit

#include "infokit/entropy.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "infokit/stats.hpp"

namespace infokit {

QParam::QParam(double q_, double k_) : q(q_), k(k_) {
  if (!std::isfinite(q) || q <= 0.0) {
    throw std::invalid_argument("q parameter: q must be finite and > 0");
  }
  if (!std::isfinite(k) || k <= 0.0) {
    throw std::invalid_argument("q parameter: k must be finite and > 0");
  }
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("binary entropy: p must lie in [0, 1]");
  }
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

EntropyValue shannon_entropy(const Distribution& d, Units units) {
  if (units == Units::TsallisK) {
    throw std::invalid_argument("shannon entropy: units must be bits or nats");
  }
  KahanSum acc;
  for (std::uint32_t i = 0; i < d.alphabet_size(); ++i) {
    const double p = d.prob(i);
    if (p > 0.0) {
      acc.add(p * (units == Units::Bits ? d.surprisal_bits(i) : d.surprisal_nats(i)));
    }
  }
  return {acc.value(), units};
}

EntropyValue tsallis_entropy(const Distribution& d, const QParam& qp) {
  if (qp.q == 1.0) {
    return {qp.k * shannon_entropy(d, Units::Nats).value, Units::TsallisK};
  }
  KahanSum acc;
  for (std::uint32_t i = 0; i < d.alphabet_size(); ++i) {
    const double p = d.prob(i);
    if (p > 0.0) acc.add(std::pow(p, qp.q));
  }
  return {qp.k * (1.0 - acc.value()) / (qp.q - 1.0), Units::TsallisK};
}

double q_surprisal(double p, const QParam& qp) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::domain_error("q-surprisal: p must lie in (0, 1]");
  }
  if (qp.q == 1.0) return -qp.k * std::log(p);
  return qp.k * (1.0 - std::pow(p, qp.q - 1.0)) / (qp.q - 1.0);
}

double stirling_log_factorial(std::uint64_t n) {
  if (n <= 1) return 0.0;
  const double x = static_cast<double>(n);
  return x * std::log(x) - x;
}

namespace {

// Cached cumulative sums of ln i with the compensation term carried across
// growth steps, so table values equal a single front-to-back Kahan pass.
struct LogFactorialTable {
  std::mutex m;
  std::vector<double> lf{0.0, 0.0};   // ln 0! = ln 1! = 0
  double sum = 0.0;
  double comp = 0.0;
};

LogFactorialTable& log_factorial_table() {
  static LogFactorialTable t;
  return t;
}

}  // namespace

double exact_log_factorial(std::uint64_t n) {
  auto& t = log_factorial_table();
  std::scoped_lock lock(t.m);
  while (t.lf.size() <= n) {
    const double x = std::log(static_cast<double>(t.lf.size()));
    const double y = x - t.comp;
    const double s = t.sum + y;
    t.comp = (s - t.sum) - y;
    t.sum = s;
    t.lf.push_back(t.sum);
  }
  return t.lf[static_cast<std::size_t>(n)];
}

double typical_count_estimate(std::uint64_t n, const Distribution& d) {
  return static_cast<double>(n) * shannon_entropy(d, Units::Bits).value;
}

double exact_log_multinomial(std::uint64_t n, const std::vector<std::uint64_t>& composition) {
  std::uint64_t sum = 0;
  for (auto c : composition) sum += c;
  if (sum != n) {
    throw std::invalid_argument("log multinomial: composition must sum to n");
  }
  double nats = exact_log_factorial(n);
  for (auto c : composition) nats -= exact_log_factorial(c);
  return nats / std::numbers::ln2;
}

SequenceLogProb sequence_log_probability(const Distribution& d, const Sequence& s) {
  KahanSum acc;
  for (std::uint32_t letter : s.letters) {
    if (letter >= d.alphabet_size()) {
      throw std::invalid_argument("sequence: letter outside the alphabet");
    }
    if (!d.in_support(letter)) {
      return {-std::numeric_limits<double>::infinity(), false};
    }
    acc.add(-d.surprisal_bits(letter));
  }
  return {acc.value(), true};
}

}  // namespace infokit

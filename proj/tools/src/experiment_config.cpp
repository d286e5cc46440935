#include "cli/experiment_config.hpp"

#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>

namespace infokit::cli {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_u64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%" PRIu64, v);
  return buf;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Parses a digit string into a u64, refusing overflow past u32 range.
std::optional<std::uint32_t> parse_u32_digits(const std::string& s) {
  if (!all_digits(s) || s.size() > 10) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : s) v = v * 10 + static_cast<std::uint64_t>(c - '0');
  if (v > 0xffffffffull) return std::nullopt;
  return static_cast<std::uint32_t>(v);
}

class Checker {
 public:
  explicit Checker(const ExperimentConfig& config) : c_(config) {}

  std::vector<Violation> take() { return std::move(violations_); }

  void add(const std::string& field, const std::string& constraint,
           const std::string& actual, bool capacity = false) {
    violations_.push_back({field, constraint, actual, capacity});
  }

  void require_dist() {
    if (c_.dist_path.empty()) add("--dist", "distribution file is required", "(empty)");
  }

  void require_ns() {
    if (c_.ns.empty()) {
      add("--n", "at least one block length is required", "(empty)");
      return;
    }
    for (std::uint64_t n : c_.ns) {
      if (n == 0) add("--n", "block lengths must be >= 1", "0");
    }
  }

  void require_single_n() {
    require_ns();
    if (c_.ns.size() > 1) {
      add("--n", "exactly one block length is required",
          fmt_u64(c_.ns.size()) + " values");
    }
  }

  // The codec works on fixed-width u32 block lengths.
  void require_n_fits_u32() {
    for (std::uint64_t n : c_.ns) {
      if (n > 0xffffffffull) {
        add("--n", "must fit in 32 bits for coding experiments", fmt_u64(n));
      }
    }
  }

  void require_epsilon() {
    if (!std::isfinite(c_.epsilon) || c_.epsilon < 0.0) {
      add("--epsilon", "must be finite and >= 0", fmt_double(c_.epsilon));
    }
  }

  void require_epsilon_units() {
    if (c_.epsilon_units != "nats" && c_.epsilon_units != "bits") {
      add("--epsilon-units", "must be \"nats\" or \"bits\"", c_.epsilon_units);
    }
  }

  void require_trials() {
    if (c_.trials == 0) add("--trials", "must be >= 1", "0");
  }

  void require_qs() {
    if (c_.qs.empty()) {
      add("--q", "at least one entropic index is required", "(empty)");
      return;
    }
    for (double q : c_.qs) {
      if (!std::isfinite(q) || q <= 0.0) {
        add("--q", "entropic indices must be finite and > 0", fmt_double(q));
      }
    }
  }

  void require_delta() {
    if (!std::isfinite(c_.delta) || c_.delta <= 0.0 || c_.delta >= 1.0) {
      add("--delta", "must lie strictly between 0 and 1", fmt_double(c_.delta));
    }
  }

  void require_threads() {
    if (c_.threads == 0) add("--threads", "must be >= 1", "0");
  }

  // The exhaustive-enumeration cap: W^n must not exceed 2^24 states.
  void check_brute_force_capacity(std::optional<std::uint32_t> w) {
    if (!c_.brute_force || !w || c_.ns.empty()) return;
    const double log2w = std::log2(static_cast<double>(*w));
    for (std::uint64_t n : c_.ns) {
      if (n >= 1 && static_cast<double>(n) * log2w > 24.0) {
        add("--brute-force",
            "exhaustive enumeration requires n*log2(W) <= 24",
            "n=" + fmt_u64(n) + " W=" + fmt_u64(*w), /*capacity=*/true);
      }
    }
  }

 private:
  const ExperimentConfig& c_;
  std::vector<Violation> violations_;
};

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    auto num = parse_u32_digits(text.substr(0, slash));
    auto den = parse_u32_digits(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rational(*num, *den);
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (!whole.empty() && !all_digits(whole)) return std::nullopt;
    if (!frac.empty() && !all_digits(frac)) return std::nullopt;
    if (frac.size() > 9) return std::nullopt;
    std::uint64_t num = 0;
    for (char c : whole) {
      num = num * 10 + static_cast<std::uint64_t>(c - '0');
      if (num > 0xffffffffull) return std::nullopt;
    }
    std::uint64_t den = 1;
    for (char c : frac) {
      num = num * 10 + static_cast<std::uint64_t>(c - '0');
      den *= 10;
      if (num > 0xffffffffull) return std::nullopt;
    }
    return Rational(static_cast<std::uint32_t>(num), static_cast<std::uint32_t>(den));
  }
  auto num = parse_u32_digits(text);
  if (!num) return std::nullopt;
  return Rational(*num, 1);
}

const char* experiment_name(Experiment e) {
  switch (e) {
    case Experiment::Entropy: return "entropy";
    case Experiment::Property1: return "property1";
    case Experiment::Property2: return "property2";
    case Experiment::Property3: return "property3";
    case Experiment::Property4: return "property4";
    case Experiment::RateSweep: return "rate-sweep";
    case Experiment::Compress: return "compress";
    case Experiment::Decompress: return "decompress";
    case Experiment::Clt: return "clt";
    case Experiment::QCensus: return "q-census";
  }
  return "unknown";
}

std::vector<Violation> validate(const ExperimentConfig& c,
                                std::optional<std::uint32_t> alphabet_w) {
  Checker ck(c);
  ck.require_threads();

  switch (c.experiment) {
    case Experiment::Entropy:
      ck.require_dist();
      ck.require_qs();
      break;

    case Experiment::Property1:
      ck.require_dist();
      ck.require_ns();
      ck.require_epsilon();
      ck.require_trials();
      break;

    case Experiment::Property2:
      ck.require_dist();
      ck.require_ns();
      ck.require_epsilon();
      ck.require_delta();
      ck.check_brute_force_capacity(alphabet_w);
      break;

    case Experiment::Property3:
      ck.require_dist();
      ck.require_ns();
      if (c.real_rates.empty()) {
        ck.add("--rates", "at least one rate is required", "(empty)");
      } else {
        for (double r : c.real_rates) {
          if (!std::isfinite(r) || r <= 0.0) {
            ck.add("--rates", "rates must be finite and > 0", fmt_double(r));
          }
        }
      }
      break;

    case Experiment::Property4:
      ck.require_dist();
      ck.require_ns();
      ck.require_epsilon();
      ck.require_epsilon_units();
      ck.require_qs();
      ck.require_trials();
      break;

    case Experiment::RateSweep: {
      ck.require_dist();
      ck.require_single_n();
      ck.require_n_fits_u32();
      ck.require_trials();
      if (c.rational_rates.empty()) {
        ck.add("--rates", "at least one rate is required", "(empty)");
      } else {
        for (std::size_t i = 0; i + 1 < c.rational_rates.size(); ++i) {
          const Rational& a = c.rational_rates[i];
          const Rational& b = c.rational_rates[i + 1];
          const auto lhs = static_cast<std::uint64_t>(a.num) * b.den;
          const auto rhs = static_cast<std::uint64_t>(b.num) * a.den;
          if (lhs >= rhs) {
            ck.add("--rates", "rates must be strictly increasing",
                   "position " + fmt_u64(i + 1));
          }
        }
      }
      if (!std::isfinite(c.converse_epsilon) || c.converse_epsilon <= 0.0) {
        ck.add("--converse-epsilon", "must be finite and > 0",
               fmt_double(c.converse_epsilon));
      }
      break;
    }

    case Experiment::Compress:
      ck.require_dist();
      ck.require_single_n();
      ck.require_n_fits_u32();
      ck.require_epsilon();
      if (!c.rate) {
        ck.add("--rate", "a coding rate is required", "(empty)");
      } else if (c.rate->num == 0) {
        ck.add("--rate", "must be > 0", "0");
      }
      if (c.out_path.empty()) {
        ck.add("--out", "compress writes a binary block file and needs an output path",
               "(empty)");
      }
      if (c.in_path.empty()) ck.require_trials();
      break;

    case Experiment::Decompress:
      ck.require_dist();
      if (c.in_path.empty()) {
        ck.add("--in", "a block file to decode is required", "(empty)");
      }
      break;

    case Experiment::Clt:
      ck.require_dist();
      if (c.clt_table != "ks" && c.clt_table != "phi") {
        ck.add("--table", "must be \"ks\" or \"phi\"", c.clt_table);
      } else if (c.clt_table == "ks") {
        ck.require_ns();
        ck.require_trials();
      } else {
        if (c.a_steps == 0) ck.add("--a-steps", "must be >= 1", "0");
        if (!std::isfinite(c.a_min) || !std::isfinite(c.a_max) || c.a_min > c.a_max) {
          ck.add("--a-min/--a-max", "need finite a-min <= a-max",
                 fmt_double(c.a_min) + ".." + fmt_double(c.a_max));
        } else if (c.a_steps > 1 && c.a_min == c.a_max) {
          ck.add("--a-steps", "more than one step needs a-min < a-max",
                 fmt_u64(c.a_steps));
        }
      }
      break;

    case Experiment::QCensus:
      ck.require_dist();
      ck.require_ns();
      ck.require_epsilon();
      ck.require_epsilon_units();
      ck.require_qs();
      ck.require_delta();
      ck.check_brute_force_capacity(alphabet_w);
      break;
  }

  return ck.take();
}

}  // namespace infokit::cli

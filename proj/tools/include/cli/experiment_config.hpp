#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infokit/rational.hpp"

namespace infokit::cli {

enum class Experiment {
  Entropy,
  Property1,
  Property2,
  Property3,
  Property4,
  RateSweep,
  Compress,
  Decompress,
  Clt,
  QCensus,
};

enum class OutputFormat { Csv, Json };

// One fully-parsed invocation.  Parsing happens in main (CLI11); everything
// here is already typed, and validate() decides whether run() may dispatch.
struct ExperimentConfig {
  Experiment experiment = Experiment::Entropy;

  std::string dist_path;
  std::string in_path;    // decompress input; optional compress input
  std::string out_path;   // empty = stdout
  OutputFormat format = OutputFormat::Csv;
  std::string pinned_timestamp;   // empty = live UTC clock

  std::vector<std::uint64_t> ns;
  double epsilon = 0.01;
  std::string epsilon_units = "nats";   // q-side experiments: "nats" | "bits"
  std::vector<double> qs;
  double delta = 0.1;
  std::vector<double> real_rates;        // property3
  std::vector<Rational> rational_rates;  // rate-sweep
  std::optional<Rational> rate;          // compress
  double converse_epsilon = 0.01;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool brute_force = false;

  // clt
  std::string clt_table = "ks";   // "ks" | "phi"
  double a_min = -10.0;
  double a_max = 10.0;
  std::uint64_t a_steps = 201;
};

struct Violation {
  std::string field;
  std::string constraint;
  std::string actual;
  bool capacity = false;   // capacity violations map to exit 3, others to exit 2
};

// Precondition check mirroring the target module contracts; never throws.
// alphabet_w, when known (distribution already loaded), enables the capacity
// checks that depend on W.
std::vector<Violation> validate(const ExperimentConfig& config,
                                std::optional<std::uint32_t> alphabet_w = std::nullopt);

// "a/b", a decimal like "0.55" (at most 9 fractional digits), or an integer.
std::optional<Rational> parse_rational(const std::string& text);

const char* experiment_name(Experiment e);

}  // namespace infokit::cli

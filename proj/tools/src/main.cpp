#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/experiment_config.hpp"
#include "cli/experiments.hpp"
#include "infokit/version.hpp"

namespace cli = infokit::cli;

int main(int argc, char** argv) {
  CLI::App app{
      "infokit: a workbench for entropy, typical sets, fixed-rate block coding,\n"
      "and the distribution of sums of i.i.d. draws"};
  app.set_version_flag("--version", infokit::kVersion);
  app.require_subcommand(1);

  cli::ExperimentConfig cfg;
  std::string format_text = "csv";
  std::string rate_text;
  std::vector<std::string> rates_text;

  const auto add_common = [&cfg, &format_text](CLI::App* sub) {
    sub->add_option("--dist", cfg.dist_path, "distribution JSON file");
    sub->add_option("--out", cfg.out_path,
                    "output path (default stdout; relative paths honor INFOKIT_OUT_DIR)");
    sub->add_option("--format", format_text, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--pin-timestamp", cfg.pinned_timestamp,
                    "fixed manifest timestamp, for byte-identical reruns");
    sub->add_option("--threads", cfg.threads, "worker cap; never affects results");
    return sub;
  };
  const auto add_mc = [&cfg](CLI::App* sub) {
    sub->add_option("--trials", cfg.trials, "Monte Carlo trials");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    return sub;
  };

  auto* entropy = add_common(
      app.add_subcommand("entropy", "Shannon and Tsallis entropies of a distribution"));
  entropy->add_option("--q", cfg.qs, "Tsallis entropic indices (comma list, default 2)")
      ->delimiter(',');
  entropy->callback([&cfg] { cfg.experiment = cli::Experiment::Entropy; });

  auto* p1 = add_mc(add_common(app.add_subcommand(
      "property1", "Monte Carlo probability that an i.i.d. block is epsilon-typical")));
  p1->add_option("--n", cfg.ns, "block lengths (comma list)")->delimiter(',');
  p1->add_option("--epsilon", cfg.epsilon, "typicality tolerance in bits");
  p1->callback([&cfg] { cfg.experiment = cli::Experiment::Property1; });

  auto* p2 = add_common(app.add_subcommand(
      "property2", "exact typical-set census against the log2-domain count bounds"));
  p2->add_option("--n", cfg.ns, "block lengths (comma list)")->delimiter(',');
  p2->add_option("--epsilon", cfg.epsilon, "typicality tolerance in bits");
  p2->add_option("--delta", cfg.delta, "confidence level for the lower count bound");
  p2->add_flag("--brute-force", cfg.brute_force,
               "enumerate all W^n sequences instead of grouping by composition");
  p2->callback([&cfg] { cfg.experiment = cli::Experiment::Property2; });

  auto* p3 = add_common(app.add_subcommand(
      "property3", "exact probability mass of the 2^(nR) most probable sequences"));
  p3->add_option("--n", cfg.ns, "block lengths (comma list)")->delimiter(',');
  p3->add_option("--rates", cfg.real_rates, "rates in bits per letter (comma list)")
      ->delimiter(',');
  p3->callback([&cfg] { cfg.experiment = cli::Experiment::Property3; });

  auto* p4 = add_mc(add_common(app.add_subcommand(
      "property4", "Monte Carlo concentration of the per-letter q-surprisal statistic")));
  p4->add_option("--n", cfg.ns, "block lengths (comma list)")->delimiter(',');
  p4->add_option("--epsilon", cfg.epsilon, "concentration tolerance");
  p4->add_option("--epsilon-units", cfg.epsilon_units, "units of --epsilon: nats or bits");
  p4->add_option("--q", cfg.qs, "Tsallis entropic indices (comma list)")->delimiter(',');
  p4->callback([&cfg] { cfg.experiment = cli::Experiment::Property4; });

  auto* sweep = add_mc(add_common(app.add_subcommand(
      "rate-sweep", "block-code reliability as the rate crosses the entropy")));
  sweep->add_option("--n", cfg.ns, "block length")->delimiter(',');
  sweep->add_option("--rates", rates_text,
                    "rates as exact rationals like 11/20 or decimals like 0.55 "
                    "(comma list, strictly increasing)")
      ->delimiter(',');
  sweep->add_option("--converse-epsilon", cfg.converse_epsilon,
                    "typicality tolerance used below the entropy threshold");
  sweep->callback([&cfg] { cfg.experiment = cli::Experiment::RateSweep; });

  auto* compress = add_mc(add_common(app.add_subcommand(
      "compress", "encode i.i.d. blocks (sampled, or read from --in) into a block file")));
  compress->add_option("--n", cfg.ns, "block length")->delimiter(',');
  compress->add_option("--rate", rate_text, "coding rate, rational like 3/5 or 0.6");
  compress->add_option("--epsilon", cfg.epsilon, "typicality tolerance in bits");
  compress->add_option("--in", cfg.in_path,
                       "JSON sequence file to encode instead of sampling");
  compress->callback([&cfg] { cfg.experiment = cli::Experiment::Compress; });

  auto* decompress = add_common(app.add_subcommand(
      "decompress", "decode a block file back into sequences (JSON output)"));
  decompress->add_option("--in", cfg.in_path, "block file to decode");
  decompress->callback([&cfg] { cfg.experiment = cli::Experiment::Decompress; });

  auto* clt = add_mc(add_common(app.add_subcommand(
      "clt", "characteristic function and normal-limit diagnostics of value sums")));
  clt->add_option("--table", cfg.clt_table,
                  "which table to emit: ks (per-n distance to the standard normal) "
                  "or phi (characteristic-function grid)");
  clt->add_option("--n", cfg.ns, "summand counts for the ks table (comma list)")
      ->delimiter(',');
  clt->add_option("--a-min", cfg.a_min, "phi grid start");
  clt->add_option("--a-max", cfg.a_max, "phi grid end");
  clt->add_option("--a-steps", cfg.a_steps, "phi grid points");
  clt->callback([&cfg] { cfg.experiment = cli::Experiment::Clt; });

  auto* qc = add_common(app.add_subcommand(
      "q-census", "exact census of the q-statistic concentration set (exploratory)"));
  qc->add_option("--n", cfg.ns, "block lengths (comma list)")->delimiter(',');
  qc->add_option("--epsilon", cfg.epsilon, "concentration tolerance");
  qc->add_option("--epsilon-units", cfg.epsilon_units, "units of --epsilon: nats or bits");
  qc->add_option("--q", cfg.qs, "Tsallis entropic indices (comma list)")->delimiter(',');
  qc->add_option("--delta", cfg.delta, "confidence level for the candidate lower bound");
  qc->add_flag("--brute-force", cfg.brute_force,
               "enumerate all W^n sequences instead of grouping by composition");
  qc->callback([&cfg] { cfg.experiment = cli::Experiment::QCensus; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);   // --help / --version
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitConfig;
  }

  cfg.format = (format_text == "json") ? cli::OutputFormat::Json : cli::OutputFormat::Csv;
  if (cfg.experiment == cli::Experiment::Entropy && cfg.qs.empty()) cfg.qs = {2.0};

  if (!rate_text.empty()) {
    const auto r = cli::parse_rational(rate_text);
    if (!r) {
      std::cerr << "config error: --rate: not a valid positive rational: " << rate_text
                << "\n";
      return cli::kExitConfig;
    }
    cfg.rate = *r;
  }
  for (const std::string& s : rates_text) {
    const auto r = cli::parse_rational(s);
    if (!r) {
      std::cerr << "config error: --rates: not a valid positive rational: " << s << "\n";
      return cli::kExitConfig;
    }
    cfg.rational_rates.push_back(*r);
  }

  return cli::run(cfg);
}

#include "cli/experiments.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <optional>
#include <sstream>

#include "cli/blockfile.hpp"
#include "cli/output.hpp"
#include "infokit/clt.hpp"
#include "infokit/coding.hpp"
#include "infokit/distribution.hpp"
#include "infokit/entropy.hpp"
#include "infokit/errors.hpp"
#include "infokit/hash.hpp"
#include "infokit/json_io.hpp"
#include "infokit/rng.hpp"
#include "infokit/sequence.hpp"
#include "infokit/typicality.hpp"
#include "infokit/version.hpp"
#include "json.hpp"

namespace infokit::cli {

namespace {

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

struct Ctx {
  const ExperimentConfig& c;
  const Distribution* d = nullptr;
  std::string dist_sha256;
  std::string timestamp;
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string join_u64(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += fmt_u64(v[i]);
  }
  return out;
}

std::string join_double(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += fmt_double(v[i]);
  }
  return out;
}

std::string rational_str(const Rational& r) {
  return fmt_u64(r.num) + "/" + fmt_u64(r.den);
}

std::string join_rationals(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += rational_str(v[i]);
  }
  return out;
}

RunManifest make_manifest(const Ctx& ctx, std::string provenance, ConfigEcho config) {
  RunManifest m;
  m.experiment = experiment_name(ctx.c.experiment);
  m.version = kVersion;
  m.timestamp = ctx.timestamp;
  m.dist_path = ctx.c.dist_path;
  m.dist_sha256 = ctx.dist_sha256;
  // --threads is deliberately absent: it caps workers without affecting any
  // result, so outputs stay byte-identical across thread counts.
  config.emplace_back("format", ctx.c.format == OutputFormat::Csv ? "csv" : "json");
  m.config = std::move(config);
  m.provenance = std::move(provenance);
  return m;
}

// Writes the table to --out (file) or stdout.  When a file is written, stdout
// gets a one-line receipt instead of the table.
int emit_table(const Ctx& ctx, const TableWriter& table, const RunManifest& manifest) {
  const std::string path = resolve_out_path(ctx.c.out_path);
  if (path.empty()) {
    table.write(std::cout, ctx.c.format, manifest);
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "i/o error: cannot open output file: " << path << "\n";
    return kExitIo;
  }
  table.write(out, ctx.c.format, manifest);
  out.flush();
  if (!out) {
    std::cerr << "i/o error: write failed: " << path << "\n";
    return kExitIo;
  }
  std::cout << "wrote " << path << " (" << table.row_count() << " rows)\n";
  return kExitOk;
}

// q-side experiments take epsilon in S_q's own units (nats at k = 1) but
// accept bits for symmetry with the classical experiments.
double epsilon_in_nats(const ExperimentConfig& c) {
  if (c.epsilon_units == "bits") return c.epsilon * std::numbers::ln2;
  return c.epsilon;
}

int run_entropy(const Ctx& ctx) {
  const auto& c = ctx.c;
  const Distribution& d = *ctx.d;
  const double h_bits = shannon_entropy(d, Units::Bits).value;
  const double h_nats = shannon_entropy(d, Units::Nats).value;

  TableWriter table({"quantity", "q", "value", "units"});
  table.add_row({"shannon_entropy", "", fmt_double(h_bits), "bits"});
  table.add_row({"shannon_entropy", "", fmt_double(h_nats), "nats"});

  std::ostringstream human;
  human << "H = " << fmt_double(h_bits) << " bits (" << fmt_double(h_nats) << " nats)\n";
  for (double q : c.qs) {
    const double s = tsallis_entropy(d, QParam(q)).value;
    table.add_row({"tsallis_entropy", fmt_double(q), fmt_double(s), "k-units(k=1)"});
    human << "S_q[q=" << fmt_double(q) << "] = " << fmt_double(s) << " (k = 1)\n";
  }

  const RunManifest m =
      make_manifest(ctx, "exact-enumeration", {{"q", join_double(c.qs)}});
  if (!c.out_path.empty()) {
    const int rc = emit_table(ctx, table, m);
    if (rc != kExitOk) return rc;
  }
  std::cout << human.str();
  return kExitOk;
}

int run_property1(const Ctx& ctx) {
  const auto& c = ctx.c;
  TableWriter table({"n", "epsilon", "trials", "seed", "estimate", "ci_low", "ci_high"});
  for (std::uint64_t n : c.ns) {
    const MonteCarloEstimate est =
        estimate_typicality_probability(*ctx.d, n, c.epsilon, c.trials, c.seed, c.threads);
    table.add_row({fmt_u64(n), fmt_double(c.epsilon), fmt_u64(c.trials), fmt_u64(c.seed),
                   fmt_double(est.estimate), fmt_double(est.ci_low),
                   fmt_double(est.ci_high)});
  }
  const RunManifest m = make_manifest(ctx, "monte-carlo",
                                      {{"n", join_u64(c.ns)},
                                       {"epsilon", fmt_double(c.epsilon)},
                                       {"trials", fmt_u64(c.trials)},
                                       {"seed", fmt_u64(c.seed)}});
  return emit_table(ctx, table, m);
}

int run_property2(const Ctx& ctx) {
  const auto& c = ctx.c;
  const double h_bits = shannon_entropy(*ctx.d, Units::Bits).value;
  const EnumerationMethod method =
      c.brute_force ? EnumerationMethod::Exhaustive : EnumerationMethod::Auto;

  TableWriter table({"n", "epsilon", "delta", "count", "log2_count", "mass", "lower_log2",
                     "upper_log2", "mass_covers_delta", "within_bounds"});
  for (std::uint64_t n : c.ns) {
    const SetCensus census = enumerate_typical_set(*ctx.d, n, c.epsilon, method);
    const TypicalSetBounds bounds = typical_set_bounds(h_bits, n, c.epsilon, c.delta);
    const bool covers = census.mass >= 1.0 - c.delta;
    const bool within =
        census.log2_count >= bounds.lower && census.log2_count <= bounds.upper;
    table.add_row({fmt_u64(n), fmt_double(c.epsilon), fmt_double(c.delta),
                   census.count.str(), fmt_double(census.log2_count),
                   fmt_double(census.mass), fmt_double(bounds.lower),
                   fmt_double(bounds.upper), bool_str(covers), bool_str(within)});
  }
  const RunManifest m = make_manifest(ctx, "exact-enumeration",
                                      {{"n", join_u64(c.ns)},
                                       {"epsilon", fmt_double(c.epsilon)},
                                       {"delta", fmt_double(c.delta)},
                                       {"brute-force", bool_str(c.brute_force)}});
  return emit_table(ctx, table, m);
}

int run_property3(const Ctx& ctx) {
  const auto& c = ctx.c;
  TableWriter table({"n", "rate", "log2_budget", "mass"});
  for (std::uint64_t n : c.ns) {
    for (double r : c.real_rates) {
      const double mass = top_set_mass(*ctx.d, n, r);
      table.add_row({fmt_u64(n), fmt_double(r), fmt_double(static_cast<double>(n) * r),
                     fmt_double(mass)});
    }
  }
  const RunManifest m = make_manifest(
      ctx, "exact-enumeration", {{"n", join_u64(c.ns)}, {"rates", join_double(c.real_rates)}});
  return emit_table(ctx, table, m);
}

int run_property4(const Ctx& ctx) {
  const auto& c = ctx.c;
  const double eps_nats = epsilon_in_nats(c);
  TableWriter table({"q", "n", "epsilon_nats", "trials", "seed", "estimate", "ci_low",
                     "ci_high", "reference", "empirical_variance", "predicted_variance",
                     "dxi"});
  for (double q : c.qs) {
    const QParam qp(q);
    for (std::uint64_t n : c.ns) {
      const QConcentrationEstimate r =
          estimate_q_concentration(*ctx.d, n, eps_nats, qp, c.trials, c.seed, c.threads);
      table.add_row({fmt_double(q), fmt_u64(n), fmt_double(eps_nats), fmt_u64(c.trials),
                     fmt_u64(c.seed), fmt_double(r.mc.estimate), fmt_double(r.mc.ci_low),
                     fmt_double(r.mc.ci_high), fmt_double(r.reference),
                     fmt_double(r.empirical_variance), fmt_double(r.predicted_variance),
                     fmt_double(r.dxi)});
    }
  }
  const RunManifest m = make_manifest(ctx, "monte-carlo",
                                      {{"q", join_double(c.qs)},
                                       {"n", join_u64(c.ns)},
                                       {"epsilon", fmt_double(c.epsilon)},
                                       {"epsilon-units", c.epsilon_units},
                                       {"epsilon-nats", fmt_double(eps_nats)},
                                       {"trials", fmt_u64(c.trials)},
                                       {"seed", fmt_u64(c.seed)}});
  return emit_table(ctx, table, m);
}

int run_rate_sweep(const Ctx& ctx) {
  const auto& c = ctx.c;
  const auto n = static_cast<std::uint32_t>(c.ns.front());
  const std::vector<RateSweepRow> rows = rate_sweep(
      *ctx.d, n, c.rational_rates, c.trials, c.seed, c.converse_epsilon, c.threads);

  TableWriter table({"rate_num", "rate_den", "rate", "feasible", "epsilon_used",
                     "payload_bits", "reliability", "ci_low", "ci_high",
                     "min_feasible_rate", "best_possible_mass"});
  for (const RateSweepRow& row : rows) {
    table.add_row({fmt_u64(row.rate.num), fmt_u64(row.rate.den),
                   fmt_double(row.rate.to_double()), bool_str(row.feasible),
                   fmt_double(row.epsilon_used), fmt_u64(row.payload_bits),
                   row.feasible ? fmt_double(row.reliability) : "",
                   row.feasible ? fmt_double(row.ci_low) : "",
                   row.feasible ? fmt_double(row.ci_high) : "",
                   row.feasible ? "" : fmt_double(row.min_feasible_rate),
                   fmt_double(row.best_possible_mass)});
  }
  const RunManifest m = make_manifest(ctx, "monte-carlo",
                                      {{"n", fmt_u64(n)},
                                       {"rates", join_rationals(c.rational_rates)},
                                       {"trials", fmt_u64(c.trials)},
                                       {"seed", fmt_u64(c.seed)},
                                       {"converse-epsilon", fmt_double(c.converse_epsilon)}});
  return emit_table(ctx, table, m);
}

// Reads {"n": N, "sequences": [[letters...], ...]} written by decompress (or
// by hand).  File-level problems map to exit 5, shape problems to exit 2.
std::vector<Sequence> read_sequences_json(const std::string& path, std::uint64_t n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read sequence file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::runtime_error("cannot read sequence file: " + path);

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("sequence file is not valid JSON: " + path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("sequences") || !doc["sequences"].is_array()) {
    throw std::invalid_argument(
        "sequence file must be an object with a \"sequences\" array: " + path);
  }
  if (doc.contains("n") &&
      (!doc["n"].is_number_unsigned() || doc["n"].get<std::uint64_t>() != n)) {
    throw std::invalid_argument("sequence file block length does not match --n");
  }

  std::vector<Sequence> seqs;
  seqs.reserve(doc["sequences"].size());
  for (const auto& item : doc["sequences"]) {
    if (!item.is_array()) {
      throw std::invalid_argument("each sequence must be an array of letters");
    }
    std::vector<std::uint32_t> letters;
    letters.reserve(item.size());
    for (const auto& v : item) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 0xffffffffull) {
        throw std::invalid_argument("sequence letters must be unsigned integers");
      }
      letters.push_back(v.get<std::uint32_t>());
    }
    seqs.emplace_back(std::move(letters));
  }
  return seqs;
}

int run_compress(const Ctx& ctx) {
  const auto& c = ctx.c;
  const Distribution& d = *ctx.d;
  const std::uint64_t n = c.ns.front();
  const CodeParams params{static_cast<std::uint32_t>(n), *c.rate, c.epsilon};

  std::vector<Sequence> seqs;
  if (!c.in_path.empty()) {
    seqs = read_sequences_json(c.in_path, n);
  } else {
    seqs.reserve(c.trials);
    for (std::uint64_t t = 0; t < c.trials; ++t) {
      TrialRng rng(c.seed, t);
      std::vector<std::uint32_t> letters(n);
      for (std::uint64_t i = 0; i < n; ++i) letters[i] = d.sample(rng);
      seqs.emplace_back(std::move(letters));
    }
  }

  const Codebook book = Codebook::build(d, params);
  std::vector<Codeword> words;
  words.reserve(seqs.size());
  std::uint64_t ok_count = 0;
  for (const Sequence& s : seqs) {
    Codeword w = book.encode(s);
    if (w.ok) ++ok_count;
    words.push_back(std::move(w));
  }

  BlockFileHeader header;
  header.n = params.n;
  header.rate = params.rate;
  header.epsilon = params.epsilon;
  header.dist_hash = distribution_hash(d);
  header.count = words.size();

  const std::string path = resolve_out_path(c.out_path);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "i/o error: cannot open output file: " << path << "\n";
    return kExitIo;
  }
  write_block_file(out, header, words);
  const auto bytes = static_cast<std::uint64_t>(out.tellp());
  out.close();

  std::cout << "encoded " << words.size() << " blocks: " << ok_count << " encodable, "
            << (words.size() - ok_count) << " atypical\n"
            << "payload_bits = " << book.payload_bits() << "\n"
            << "wrote " << path << " (" << bytes << " bytes)\n";
  return kExitOk;
}

int run_decompress(const Ctx& ctx) {
  const auto& c = ctx.c;
  const Distribution& d = *ctx.d;

  std::ifstream in(c.in_path, std::ios::binary);
  if (!in) {
    std::cerr << "i/o error: cannot read block file: " << c.in_path << "\n";
    return kExitIo;
  }
  const BlockFile file = read_block_file(in);

  const auto want = distribution_hash(d);
  if (want != file.header.dist_hash) {
    std::cerr << "config error: distribution mismatch: block file was written for sha256="
              << hex_digest(file.header.dist_hash) << " but --dist hashes to sha256="
              << hex_digest(want) << "\n";
    return kExitConfig;
  }

  const CodeParams params{file.header.n, file.header.rate, file.header.epsilon};
  const Codebook book = Codebook::build(d, params);

  nlohmann::ordered_json doc;
  doc["n"] = file.header.n;
  doc["count"] = file.header.count;
  auto& seqs = doc["sequences"] = nlohmann::ordered_json::array();
  std::uint64_t decoded = 0;
  for (const Codeword& w : file.codewords) {
    std::optional<Sequence> s;
    try {
      s = book.decode(w);
    } catch (const std::invalid_argument& e) {
      std::cerr << "i/o error: corrupt block file: " << e.what() << "\n";
      return kExitIo;
    }
    if (s) {
      ++decoded;
      seqs.push_back(s->letters);
    } else {
      seqs.push_back(nullptr);
    }
  }

  const std::string path = resolve_out_path(c.out_path);
  if (path.empty()) {
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "i/o error: cannot open output file: " << path << "\n";
    return kExitIo;
  }
  out << doc.dump(2) << "\n";
  out.flush();
  if (!out) {
    std::cerr << "i/o error: write failed: " << path << "\n";
    return kExitIo;
  }
  std::cout << "decoded " << decoded << "/" << file.header.count << " blocks; wrote "
            << path << "\n";
  return kExitOk;
}

int run_clt(const Ctx& ctx) {
  const auto& c = ctx.c;
  const Distribution& d = *ctx.d;

  TableWriter table = c.clt_table == "phi"
                          ? TableWriter({"a", "re_phi", "im_phi"})
                          : TableWriter({"n", "trials", "seed", "ks_distance"});
  RunManifest m;
  if (c.clt_table == "phi") {
    for (std::uint64_t i = 0; i < c.a_steps; ++i) {
      const double a =
          c.a_steps == 1
              ? c.a_min
              : c.a_min + (c.a_max - c.a_min) * static_cast<double>(i) /
                              static_cast<double>(c.a_steps - 1);
      const std::complex<double> phi = characteristic_function(d, a);
      table.add_row({fmt_double(a), fmt_double(phi.real()), fmt_double(phi.imag())});
    }
    m = make_manifest(ctx, "exact-enumeration",
                      {{"table", "phi"},
                       {"a-min", fmt_double(c.a_min)},
                       {"a-max", fmt_double(c.a_max)},
                       {"a-steps", fmt_u64(c.a_steps)}});
  } else {
    for (std::uint64_t n : c.ns) {
      const double ks = clt_empirical_distance(d, n, c.trials, c.seed, c.threads);
      table.add_row({fmt_u64(n), fmt_u64(c.trials), fmt_u64(c.seed), fmt_double(ks)});
    }
    m = make_manifest(ctx, "monte-carlo",
                      {{"table", "ks"},
                       {"n", join_u64(c.ns)},
                       {"trials", fmt_u64(c.trials)},
                       {"seed", fmt_u64(c.seed)}});
  }

  const int rc = emit_table(ctx, table, m);
  if (rc != kExitOk) return rc;
  if (!c.out_path.empty()) {
    const MomentPair direct = direct_moments(d);
    const MomentPair via_cf = moments_via_cf(d);
    std::cout << "moments: direct E=" << fmt_double(direct.expectation)
              << " D=" << fmt_double(direct.variance)
              << "; via_cf E=" << fmt_double(via_cf.expectation)
              << " D=" << fmt_double(via_cf.variance) << "\n";
  }
  return kExitOk;
}

int run_q_census(const Ctx& ctx) {
  const auto& c = ctx.c;
  const double eps_nats = epsilon_in_nats(c);
  const double ln2 = std::numbers::ln2;
  const EnumerationMethod method =
      c.brute_force ? EnumerationMethod::Exhaustive : EnumerationMethod::Auto;

  TableWriter table({"q", "n", "epsilon_nats", "delta", "count", "log2_count", "mass",
                     "candidate_lower_log2", "candidate_upper_log2", "exploratory"});
  for (double q : c.qs) {
    const QParam qp(q);
    const double s_q = tsallis_entropy(*ctx.d, qp).value;
    for (std::uint64_t n : c.ns) {
      const SetCensus census = q_set_census(*ctx.d, n, eps_nats, qp, method);
      // Property-2-shaped candidates with S_q in H's place, converted to the
      // log2 domain.  Exploratory: no guarantee is asserted for them.
      const double lower =
          std::log2(1.0 - c.delta) + static_cast<double>(n) * (s_q - eps_nats) / ln2;
      const double upper = static_cast<double>(n) * (s_q + eps_nats) / ln2;
      table.add_row({fmt_double(q), fmt_u64(n), fmt_double(eps_nats), fmt_double(c.delta),
                     census.count.str(), fmt_double(census.log2_count),
                     fmt_double(census.mass), fmt_double(lower), fmt_double(upper),
                     "true"});
    }
  }
  const RunManifest m = make_manifest(ctx, "exact-enumeration",
                                      {{"q", join_double(c.qs)},
                                       {"n", join_u64(c.ns)},
                                       {"epsilon", fmt_double(c.epsilon)},
                                       {"epsilon-units", c.epsilon_units},
                                       {"epsilon-nats", fmt_double(eps_nats)},
                                       {"delta", fmt_double(c.delta)},
                                       {"brute-force", bool_str(c.brute_force)}});
  return emit_table(ctx, table, m);
}

int dispatch(const Ctx& ctx) {
  switch (ctx.c.experiment) {
    case Experiment::Entropy: return run_entropy(ctx);
    case Experiment::Property1: return run_property1(ctx);
    case Experiment::Property2: return run_property2(ctx);
    case Experiment::Property3: return run_property3(ctx);
    case Experiment::Property4: return run_property4(ctx);
    case Experiment::RateSweep: return run_rate_sweep(ctx);
    case Experiment::Compress: return run_compress(ctx);
    case Experiment::Decompress: return run_decompress(ctx);
    case Experiment::Clt: return run_clt(ctx);
    case Experiment::QCensus: return run_q_census(ctx);
  }
  return kExitConfig;
}

}  // namespace

int run(const ExperimentConfig& c) {
  // Load the distribution first: the capacity checks in validate() need the
  // alphabet size, and file problems have their own exit codes anyway.
  std::optional<Distribution> dist;
  std::string dist_sha256;
  if (!c.dist_path.empty()) {
    try {
      dist = load_distribution(c.dist_path);
      dist_sha256 = hex_digest(distribution_hash(*dist));
    } catch (const std::invalid_argument& e) {
      std::cerr << "config error: " << c.dist_path << ": " << e.what() << "\n";
      return kExitConfig;
    } catch (const std::runtime_error& e) {
      std::cerr << "i/o error: " << e.what() << "\n";
      return kExitIo;
    }
  }

  const auto violations = validate(
      c, dist ? std::optional<std::uint32_t>(dist->alphabet_size()) : std::nullopt);
  if (!violations.empty()) {
    bool any_config = false;
    for (const Violation& v : violations) {
      std::cerr << (v.capacity ? "capacity error: " : "config error: ") << v.field << ": "
                << v.constraint << " (got " << v.actual << ")\n";
      if (!v.capacity) any_config = true;
    }
    return any_config ? kExitConfig : kExitCapacity;
  }

  Ctx ctx{c, dist ? &*dist : nullptr, std::move(dist_sha256),
          c.pinned_timestamp.empty() ? current_utc_timestamp() : c.pinned_timestamp};
  try {
    return dispatch(ctx);
  } catch (const rate_infeasible_error& e) {
    std::cerr << "rate infeasible: " << e.what() << "\n";
    return kExitRateInfeasible;
  } catch (const capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace infokit::cli

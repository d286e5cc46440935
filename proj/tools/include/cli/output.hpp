#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cli/experiment_config.hpp"

namespace infokit::cli {

// Everything needed to reproduce a run, echoed at the top of every output:
// tool version, experiment, timestamp, the input distribution (path + content
// hash), the effective configuration, and how each result row was produced.
struct RunManifest {
  std::string experiment;
  std::string version;
  std::string timestamp;
  std::string dist_path;
  std::string dist_sha256;
  std::vector<std::pair<std::string, std::string>> config;
  std::string provenance;   // "exact-enumeration" | "monte-carlo" | "codec"
};

// Column-oriented result table with one frozen schema per experiment.
// CSV: manifest as leading '#' comment lines, then header, then rows.
// JSON: {"manifest": {...}, "columns": [...], "rows": [[...], ...]} with the
// same cells in the same order, so the two formats mirror each other 1:1.
class TableWriter {
 public:
  explicit TableWriter(std::vector<std::string> columns);

  void add_row(std::vector<std::string> cells);
  std::size_t row_count() const { return rows_.size(); }

  void write(std::ostream& out, OutputFormat format, const RunManifest& manifest) const;

 private:
  void write_csv(std::ostream& out, const RunManifest& manifest) const;
  void write_json(std::ostream& out, const RunManifest& manifest) const;

  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Shortest text that round-trips the exact double ("%.17g").
std::string fmt_double(double v);
std::string fmt_u64(std::uint64_t v);

// ISO-8601 UTC wall-clock time, e.g. "2026-08-22T14:03:07Z".
std::string current_utc_timestamp();

// Applies the INFOKIT_OUT_DIR default directory to a relative output path;
// absolute paths and empty paths (stdout) pass through unchanged.
std::string resolve_out_path(const std::string& out_path);

}  // namespace infokit::cli

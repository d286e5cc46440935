#include "cli/output.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <ctime>

#include "json.hpp"

namespace infokit::cli {

namespace {

// Cells are simple tokens; quoting is here so a pathological cell can never
// corrupt the table shape.
std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string quoted = "\"";
  for (char c : cell) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  quoted += "\"";
  return quoted;
}

}  // namespace

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

std::string current_utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string resolve_out_path(const std::string& out_path) {
  if (out_path.empty() || out_path.front() == '/') return out_path;
  const char* dir = std::getenv("INFOKIT_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return out_path;
  std::string resolved = dir;
  if (resolved.back() != '/') resolved += '/';
  resolved += out_path;
  return resolved;
}

TableWriter::TableWriter(std::vector<std::string> columns)
    : columns_(std::move(columns)) {}

void TableWriter::add_row(std::vector<std::string> cells) {
  rows_.push_back(std::move(cells));
}

void TableWriter::write(std::ostream& out, OutputFormat format,
                        const RunManifest& manifest) const {
  if (format == OutputFormat::Csv) {
    write_csv(out, manifest);
  } else {
    write_json(out, manifest);
  }
}

void TableWriter::write_csv(std::ostream& out, const RunManifest& manifest) const {
  out << "# infokit " << manifest.version << "\n";
  out << "# experiment: " << manifest.experiment << "\n";
  out << "# timestamp: " << manifest.timestamp << "\n";
  if (!manifest.dist_path.empty()) {
    out << "# distribution: " << manifest.dist_path
        << " sha256=" << manifest.dist_sha256 << "\n";
  }
  out << "# config:";
  for (const auto& [key, value] : manifest.config) out << ' ' << key << '=' << value;
  out << "\n";
  out << "# provenance: " << manifest.provenance << "\n";

  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_escape(columns_[i]);
  }
  out << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << csv_escape(row[i]);
    }
    out << "\n";
  }
}

void TableWriter::write_json(std::ostream& out, const RunManifest& manifest) const {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json m;
  m["tool"] = "infokit";
  m["version"] = manifest.version;
  m["experiment"] = manifest.experiment;
  m["timestamp"] = manifest.timestamp;
  if (!manifest.dist_path.empty()) {
    m["distribution"] = {{"path", manifest.dist_path}, {"sha256", manifest.dist_sha256}};
  }
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [key, value] : manifest.config) cfg[key] = value;
  m["config"] = cfg;
  m["provenance"] = manifest.provenance;
  doc["manifest"] = m;
  doc["columns"] = columns_;
  // Cells stay exact decimal strings so JSON and CSV carry identical values.
  doc["rows"] = rows_;
  out << doc.dump(2) << "\n";
}

}  // namespace infokit::cli

#include "infokit/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "infokit/hash.hpp"
#include "json.hpp"

namespace infokit {

namespace {

std::vector<double> number_array(const nlohmann::json& j, const char* key) {
  const auto& arr = j.at(key);
  if (!arr.is_array()) {
    throw std::invalid_argument(std::string("distribution JSON: \"") + key +
                                "\" must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) {
      throw std::invalid_argument(std::string("distribution JSON: \"") + key +
                                  "\" must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Distribution distribution_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("distribution JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("probs")) {
    throw std::invalid_argument("distribution JSON: expected an object with a \"probs\" array");
  }
  std::vector<double> probs = number_array(j, "probs");
  if (j.contains("values")) {
    return Distribution(std::move(probs), number_array(j, "values"));
  }
  return Distribution(std::move(probs));
}

std::string distribution_to_json(const Distribution& d) {
  nlohmann::json j;
  j["probs"] = d.probs();
  if (d.has_values()) j["values"] = d.values();
  return j.dump();
}

Distribution load_distribution(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read distribution file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read distribution file: " + path);
  return distribution_from_json(buffer.str());
}

std::string census_to_json(const SetCensus& census, const Distribution& d, double q) {
  nlohmann::json j;
  j["type"] = "set_census";
  j["dist_hash"] = hex_digest(distribution_hash(d));
  j["n"] = census.n;
  j["epsilon"] = census.epsilon;
  j["q"] = q;
  j["count"] = census.count.str();
  j["log2_count"] = census.log2_count;
  j["mass"] = census.mass;
  if (census.lower_bound.has_value()) {
    j["lower_bound"] = *census.lower_bound;
  } else {
    j["lower_bound"] = nullptr;
  }
  if (census.upper_bound.has_value()) {
    j["upper_bound"] = *census.upper_bound;
  } else {
    j["upper_bound"] = nullptr;
  }
  return j.dump();
}

std::string estimate_to_json(const MonteCarloEstimate& e, const Distribution& d,
                             std::uint64_t n, double epsilon, double q) {
  nlohmann::json j;
  j["type"] = "monte_carlo_estimate";
  j["dist_hash"] = hex_digest(distribution_hash(d));
  j["n"] = n;
  j["epsilon"] = epsilon;
  j["q"] = q;
  j["seed"] = e.seed;
  j["trials"] = e.trials;
  j["estimate"] = e.estimate;
  j["ci_low"] = e.ci_low;
  j["ci_high"] = e.ci_high;
  return j.dump();
}

}  // namespace infokit

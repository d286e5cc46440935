#pragma once

#include <string>

#include "infokit/coding.hpp"
#include "infokit/distribution.hpp"
#include "infokit/typicality.hpp"

namespace infokit {

// Distribution interchange format: {"probs": [...], "values": [...]} with
// "values" optional.  Parse or validation failures -> std::invalid_argument.
Distribution distribution_from_json(const std::string& text);
std::string distribution_to_json(const Distribution& d);

// Reads the file and parses it; unreadable file -> std::runtime_error.
Distribution load_distribution(const std::string& path);

// JSON serializations embed the identifying parameters (distribution hash,
// n, epsilon, q where relevant, seed, trials) so results are self-describing.
std::string census_to_json(const SetCensus& census, const Distribution& d,
                           double q = 1.0);
std::string estimate_to_json(const MonteCarloEstimate& e, const Distribution& d,
                             std::uint64_t n, double epsilon, double q = 1.0);

}  // namespace infokit

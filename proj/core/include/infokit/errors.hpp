#pragma once

#include <stdexcept>
#include <string>

namespace infokit {

// Thrown when a requested enumeration or table would exceed the configured
// feasibility guard (exhaustive sequence walks, type-class materialization,
// convolution supports).
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when no codebook exists at the requested rate.  Carries the minimum
// rate at which construction would succeed for the same distribution, block
// length, and epsilon.
class rate_infeasible_error : public std::runtime_error {
 public:
  rate_infeasible_error(const std::string& message, double min_rate)
      : std::runtime_error(message), min_rate_(min_rate) {}

  double min_rate() const noexcept { return min_rate_; }

 private:
  double min_rate_;
};

}  // namespace infokit

#pragma once

#include "cli/experiment_config.hpp"

namespace infokit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;          // invalid flags / invalid inputs
inline constexpr int kExitCapacity = 3;        // request exceeds enumeration caps
inline constexpr int kExitRateInfeasible = 4;  // rate below the typical-set floor
inline constexpr int kExitIo = 5;              // unreadable/unwritable/corrupt files

// Validates, dispatches, writes outputs, and maps errors to exit codes.
// Every result it reports is reproducible by the corresponding library call.
int run(const ExperimentConfig& config);

}  // namespace infokit::cli

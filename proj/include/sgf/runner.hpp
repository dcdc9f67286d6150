#pragma once

#include "sgf/config.hpp"

namespace sgf {

// Executes one experiment (verify / evolve / fit / compare-alpha), writes
// artifacts under config.output_dir, and returns the process exit code
// (0 iff all gated checks pass).
int run_experiment(const ExperimentConfig& config);

}  // namespace sgf

#pragma once

#include <array>
#include <string>

#include "sgf/evolution.hpp"

namespace sgf {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    // [grid]
    int n = 64;
    double box_length = 40.0;
    // [params]
    SimParams params;
    // [init]
    std::string init_kind = "perturbed-profile";
    double amplitude = 0.01;
    unsigned seed = 11;
    std::array<double, 3> coeffs{1.0, 0.0, 0.0};
    // [run]
    std::string mode = "evolve";  // verify | evolve | fit | compare-alpha
    std::string output_dir = "out";
    bool gate_moments = true;
    bool gate_envelope = true;
    double envelope_cap = 2.0;
    // [sweep] (compare-alpha)
    std::vector<double> alphas{0.0, 0.25, 0.5, 1.0};

    void validate() const;
};

// Sectioned key = value text; '#' and ';' start comments.  Errors carry the
// offending line number and key.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace sgf

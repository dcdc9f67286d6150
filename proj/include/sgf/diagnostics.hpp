#pragma once

#include <map>
#include <string>
#include <vector>

#include "sgf/evolution.hpp"
#include "sgf/grid.hpp"
#include "sgf/profiles.hpp"

namespace sgf {

// One time sample of the energy ladder evaluated on the remainder R of the
// self-similar decomposition.  All scaled-variable norms are obtained from
// the unscaled state by the exact change-of-variables identities (s = t+T):
//   || |X|^m R ||^2 = s^{1/2-m} || |x|^m r ||^2,   ||grad R||^2 = s^{3/2} ||grad r||^2,
//   ||Lap R||^2 = s^{5/2} ||Lap r||^2,  ||(-Lap)^{-p} R||^2 = s^{1/2-2p} ||(-Lap)^{-p} r||^2,
// where r = w - asymptotic_profile(b, t, T).
struct EnergyReport {
    double t = 0.0;
    double tau = 0.0;
    double E0 = 0, E1 = 0, E2 = 0, E3 = 0, E4 = 0, E5 = 0, E6 = 0;
    std::array<double, 3> beta{0, 0, 0};  // scaled moments b_i / (t+T)
    std::array<double, 3> b{0, 0, 0};     // unscaled moments
    std::map<std::string, double> norms;
    double err_L1 = 0, err_L2 = 0, err_Linf = 0, err_vel_L2 = 0;
    double envelope = 0.0;  // the global-boundedness monitor quantity
};

EnergyReport energy_sample(const SimState& state, const SimParams& params, double K);

enum class ProfileErrorVariant { Plain, Helmholtz, Velocity };

// Discrete L^p norm (pointwise vector magnitude; p in {1, 2, inf} with
// p = 0 meaning inf) of the difference between the state and the
// first-order asymptotic comparator.
double profile_error(const SimState& state, const std::array<double, 3>& b,
                     const SimParams& params, double p,
                     ProfileErrorVariant variant = ProfileErrorVariant::Plain);

struct DecayFit {
    std::string quantity;
    double slope = 0.0;
    double intercept = 0.0;
    // RMS of the log-residuals divided by the std of log(t+T): the scale on
    // which the slope itself is uncertain.
    double residual = 0.0;
    double predicted = 0.0;
    int n_samples = 0;
};

struct SeriesSample {
    double t;
    double value;
};

// Least-squares slope of log(value) against log(t+T) over [t_lo, t_hi].
DecayFit fit_decay(const std::vector<SeriesSample>& series, double T,
                   double t_lo, double t_hi, const std::string& name,
                   double predicted);

// Convenience: fit over the last half of the samples in log(t+T).
DecayFit fit_decay_tail(const std::vector<SeriesSample>& series, double T,
                        const std::string& name, double predicted);

}  // namespace sgf

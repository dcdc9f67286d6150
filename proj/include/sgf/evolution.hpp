#pragma once

#include <functional>
#include <optional>
#include <string>

#include "sgf/grid.hpp"
#include "sgf/profiles.hpp"

namespace sgf {

struct SimParams {
    double alpha = 1.0;    // elastic material constant, >= 0
    double epsilon = 0.0;  // fourth-order damping strength, >= 0
    double T = 1.0;        // time shift, >= 1
    double theta = 1.0;    // target decay-rate parameter, in (0, 3/2)
    double dt = 0.05;
    double t_end = 1.0;
    int output_every = 10;
    double K = 64.0;       // combination constant for the top energy functional
    double cfl = 0.5;
    bool nonlinear = true;

    void validate() const;
};

struct SimState {
    double t = 0.0;
    SpectralVectorField what;
};

struct CflError : std::runtime_error {
    double suggested_dt;
    CflError(double s, const std::string& msg) : std::runtime_error(msg), suggested_dt(s) {}
};

// Symbol of the linear part: sigma(k) = -(|k|^2 + eps |k|^4)/(1 + alpha |k|^2).
double linear_symbol(double k2, const SimParams& p);

// -(1 + alpha|k|^2)^{-1} i k ^ F[(w - alpha Lap w) ^ u], dealiased, with
// u from Biot-Savart; so that d/dt w_hat = sigma(k) w_hat + nonlinear_rhs.
// Optionally reports max |u| for the CFL check.
SpectralVectorField nonlinear_rhs(const SpectralVectorField& what, const SimParams& p,
                                  double* max_velocity = nullptr);

// One step of the integrating-factor Heun scheme: exact exp(sigma dt) on the
// linear part, two-stage explicit update of the nonlinearity.
SimState step(const SimState& state, const SimParams& p);

using Observer = std::function<void(double t, const SimState&)>;

SimState evolve(const VectorField& w0, const SimParams& p, const Observer& observer = {});

struct SmallnessReport {
    double value = 0.0;      // left-hand side of the entry condition
    double threshold = 0.0;  // gamma * (3/2 - theta)^2
    bool pass = false;
    std::array<double, 4> terms{0, 0, 0, 0};
};

// Scaled-variable entry condition on W0 = w at tau0:
//   ||W0||^2_{L2(4)} + ||grad W0||^2 + alpha e^{-tau0} ||Lap W0||^2
//   + alpha^2 e^{-2 tau0} || |X|^4 Lap W0 ||^2  <= gamma (3/2-theta)^2.
SmallnessReport smallness_lhs(const VectorField& W0, const SimParams& p, double gamma);

// Unscaled variant:
//   T^{1/2}||w0||^2 + T^{-7/2}|| |x|^4 w0 ||^2 + T^{3/2}||grad w0||^2
//   + alpha T^{3/2}||Lap w0||^2 + alpha^2 T^{-3/2}|| |x|^4 Lap w0 ||^2.
SmallnessReport smallness_lhs_unscaled(const VectorField& w0, const SimParams& p, double gamma);

enum class InitKind { ProfileMultiple, GaussianRandomDivFree, PerturbedProfile };

InitKind parse_init_kind(const std::string& name);

// Divergence-free, mean-free, Gaussian-enveloped initial data.  The random
// kinds build curl(smoothed enveloped noise); the spectrum is kept smooth on
// purpose (no sharp cutoff) so that x-weighted quadratures stay clean.
VectorField make_initial_data(InitKind kind, double amplitude, unsigned seed,
                              const Grid3& g,
                              const std::array<double, 3>& coeffs = {1.0, 0.0, 0.0});

// Enforces the planner rule 6 sqrt(t_end + T) <= L.
void check_box_horizon(const Grid3& g, const SimParams& p);

}  // namespace sgf

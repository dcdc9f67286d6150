#pragma once

#include "sgf/grid.hpp"

namespace sgf {

// Gaussian vortex profile G(X) = (4*pi)^{-3/2} exp(-|X|^2/4) and the
// associated moment weights p_i (linear, curl p_i = e_i, div p_i = 0),
// decay eigenfields f_i = p_i G = curl(G e_i), and their Biot-Savart
// velocity images v_i.
struct ProfileBasis {
    Grid3 grid;
    ScalarField G;
    std::array<VectorField, 3> p;
    std::array<VectorField, 3> f;
    std::array<VectorField, 3> v;
};

ScalarField gaussian(const Grid3& g);
VectorField moment_weight(int i, const Grid3& g);  // p_i, i in {1,2,3}
VectorField gaussian_eigenfield(int i, const Grid3& g);  // f_i = p_i * G
VectorField velocity_profile(int i, const Grid3& g);  // v_i, cached per grid
const ProfileBasis& profile_basis(const Grid3& g);  // cached

struct MomentVector {
    std::array<double, 3> b{0.0, 0.0, 0.0};
    // The two equivalent antisymmetric quadrature forms for each entry
    // (e.g. b_1 via +int X2 w3 and via -int X3 w2) and their largest gap.
    std::array<double, 3> form_a{0.0, 0.0, 0.0};
    std::array<double, 3> form_b{0.0, 0.0, 0.0};
    double discrepancy = 0.0;
    bool boundary_ok = true;
};

// First moments b_i = int p_i . w dx.  Flags the result unreliable when w
// has not decayed to <= 1e-8 of its max within L/6 of the boundary.
MomentVector first_moments(const VectorField& w);

// ||(1+|x|^2)^{m/2} D^deriv u||_{L2} with deriv in {0,1,2} (gradient and
// Hessian computed spectrally, all components summed).
double weighted_norm(const VectorField& u, int m, int deriv = 0);
double weighted_norm(const ScalarField& u, int m, int deriv = 0);

// || |x|^m u ||_{L2}^2 (plain power weight, no 1+ term).
double power_weighted_norm2(const VectorField& u, int m);

struct MomentSplit {
    MomentVector beta;
    VectorField R;
};

// Splits off the moment-carrying modes: W = sum_i beta_i f_i + R with all
// nine first moments int x_i R_j = 0 up to quadrature tolerance.
MomentSplit project_moment_modes(const VectorField& W);

// Comparator field sum_i b_i (t+T)^{-2} f_i(x/sqrt(t+T)), sampled from the
// closed form.
VectorField asymptotic_profile(const MomentVector& b, double t, double T, const Grid3& g);
VectorField asymptotic_profile(const std::array<double, 3>& b, double t, double T, const Grid3& g);

// Velocity comparator sum_i b_i (t+T)^{-3/2} v_i(x/sqrt(t+T)), realized as
// the Biot-Savart image of asymptotic_profile (scale-covariant).
VectorField asymptotic_velocity(const std::array<double, 3>& b, double t, double T, const Grid3& g);

// Self-similar change of variables W(X) = (t+T) w(sqrt(t+T) X) realized by
// evaluating the trigonometric interpolant of w at the rescaled points.
// For t+T > 1 the targets leave the box, which is only legitimate when w
// has decayed at the boundary; otherwise this throws.
VectorField to_scaled(const VectorField& w, double t, double T);
VectorField from_scaled(const VectorField& W, double t, double T);

// Smooth radial cutoff used by every x-weighted differential operator:
// 1 inside r0 = 0.45 L, 0 beyond r0 + 0.05 L, C-infinity bump in between.
const ScalarField& taper(const Grid3& g);

// Diagnostic generator A(W) = Lap W + W + x/2 . grad W, with the x-weighted
// term tapered; used only for residual checks, never time-stepped.
VectorField apply_generator(const VectorField& W);
// x/2 . grad W alone (tapered).
VectorField radial_drift(const VectorField& W);

}  // namespace sgf

#pragma once

#include <string>
#include <vector>

#include "sgf/evolution.hpp"
#include "sgf/grid.hpp"

namespace sgf {

struct IdentityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tol = 0.0;
    bool pass = false;
};

constexpr double kRelFloor = 1e-30;

IdentityReport make_report(std::string name, double lhs, double rhs, double tol);

// Generator eigen-relations: A f_i = -f_i in quadrature (tapered), and the
// adjoint relation on the moment weights, (Lap - x/2.grad - 1/2) p_i = -p_i,
// pointwise inside the taper radius.
std::vector<IdentityReport> check_eigenrelations(const Grid3& g);

// int (w - C Lap w) ^ u dx = 0 with u the Biot-Savart velocity of w.
IdentityReport check_wedge_identity(const VectorField& w, double C);

// Negative-order pairings against the generator, for mean- and
// first-moment-free w and 0 <= s < 7/4:
//   ((-Lap)^{-s} A(w), (-Lap)^{-s} w) = -||(-Lap)^{1/2-s} w||^2
//                                        - (s - 1/4) ||(-Lap)^{-s} w||^2
//   ((-Lap)^{-s}(x/2 . grad Lap w), (-Lap)^{-s} w) = (s + 5/4) ||(-Lap)^{1/2-s} w||^2
std::vector<IdentityReport> check_fourier_generator_identities(const VectorField& w, double s);

// |x|^8-weighted pairings with F(u) = |x|^8 (u - a Lap u), for divergence
// free Gaussian-enveloped u:
//   (Lap u, F(u)), (x/2.grad u, F(u)), (A(u), F(u)), (Lap^2 u, F(u)),
//   (x/2.grad Lap u, F(u)) -- each against its closed-form right-hand side.
std::vector<IdentityReport> check_weighted_identities(const VectorField& u, double a);

// Negative-order norm bounds ||(-Lap)^{-s} u|| <= C/sqrt(7-4s) ||u||_{L2(4)}
// and the gradient variant: verifies preconditions, finiteness, and that the
// normalized ratio stays bounded across s_list (no claim about C).
std::vector<IdentityReport> check_neg_order_bounds(const VectorField& u,
                                                   const std::vector<double>& s_list);

// ||R||^2 <= 5/(7 eta^2) ||(-Lap)^{-(theta+1)/2} R||^2 + eta^2/2 ||grad R||^2.
IdentityReport check_interpolation(const VectorField& R, double eta, double theta);

// Max relative drift of the first moments along a sampled trajectory.
struct TrajectorySample {
    double t;
    std::array<double, 3> b;
};
IdentityReport check_moment_law(const std::vector<TrajectorySample>& samples, double tol = 1e-6);

// 1/2 || |x|^4 (R - a Lap R) ||^2 = 1/2 || |x|^4 R ||^2 + a^2/2 || |x|^4 Lap R ||^2
//                                   + a || |x|^4 grad R ||^2 - 36 a || |x|^3 R ||^2.
IdentityReport check_weighted_energy_expansion(const VectorField& R, double a);

// Standard corpus: the three decay eigenfields, three seeded random
// Gaussian-enveloped divergence-free fields, and one evolved state.
struct Corpus {
    std::vector<std::pair<std::string, VectorField>> fields;
};
Corpus standard_corpus(const Grid3& g);

// Random divergence-free field with a Gaussian envelope; band_pass
// concentrates the spectrum in a shell near |k| = 2 (used for the
// negative-order checks, which are sensitive to spectral mass near k = 0).
VectorField random_divfree_field(const Grid3& g, unsigned seed, bool band_pass = false);

// Runs every check on the standard corpus and collects the reports.
std::vector<IdentityReport> run_identity_suite(const Grid3& g);

}  // namespace sgf

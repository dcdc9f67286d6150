#pragma once

#include "sgf/grid.hpp"

namespace sgf {

// Unnormalized forward DFT; inverse divides by n^3 and drops the
// (numerically zero) imaginary part.
SpectralVectorField forward(const VectorField& f);
VectorField inverse(const SpectralVectorField& s);

ComplexArray forward_scalar(const Grid3& g, const RealArray& f);
RealArray inverse_scalar(const Grid3& g, const ComplexArray& s);

SpectralVectorField spectral_curl(const SpectralVectorField& w);
SpectralVectorField spectral_laplacian(const SpectralVectorField& w);
SpectralVectorField spectral_bilaplacian(const SpectralVectorField& w);
// gradient of a scalar: returns the 3-component field i*k*f_hat
SpectralVectorField spectral_gradient(const Grid3& g, const ComplexArray& f);

// Projection onto divergence-free fields: w_hat - k (k.w_hat)/|k|^2.
SpectralVectorField leray_project(const SpectralVectorField& w);

// Velocity from vorticity: u_hat = i k ^ w_hat / |k|^2, u_hat(0) = 0.
// Requires w divergence-free and mean-free.
SpectralVectorField biot_savart(const SpectralVectorField& w);

// Two-thirds rule: zero every coefficient with any |frequency index| > n/3.
SpectralVectorField dealias(const SpectralVectorField& w);
bool dealias_keeps(const Grid3& g, int i, int j, int l);

// Multiplier |k|^{-2s} on k != 0; the zero mode is set to 0 (inputs are
// mean-free).  Valid for 0 <= s < 7/4.
SpectralVectorField fractional_neg_laplacian(const SpectralVectorField& w, double s);

// ||k|^{2p} w_hat|-weighted spectral norm^2, i.e. ||(-Lap)^p w||_{L2}^2
// with the zero mode skipped for p < 0.
double fractional_norm2(const SpectralVectorField& w, double p);

// Cached per-grid table of |k|^2 in array order.
const RealArray& k2_table(const Grid3& g);

double max_pointwise_magnitude(const VectorField& f);

}  // namespace sgf

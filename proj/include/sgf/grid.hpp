#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sgf {

// Periodic cube [-L/2, L/2)^3 sampled on n points per axis.  Arrays are
// laid out x-fastest: linear index = i + n*(j + n*l) for the point
// (x_i, y_j, z_l).  Wavenumbers follow the usual DFT frequency order,
// k = (2*pi/L) * m with integer m in [-n/2, n/2).
struct Grid3 {
    int n = 0;
    double box_length = 0.0;

    double spacing() const { return box_length / n; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
    double coord(int i) const { return -0.5 * box_length + spacing() * i; }
    int freq_index(int i) const { return i < n / 2 ? i : i - n; }
    double wavenumber(int i) const;
    std::size_t index(int i, int j, int l) const {
        return static_cast<std::size_t>(i) + static_cast<std::size_t>(n) * (j + static_cast<std::size_t>(n) * l);
    }
    bool operator==(const Grid3&) const = default;
};

Grid3 make_grid(int n, double box_length);

using RealArray = std::vector<double>;
using ComplexArray = std::vector<std::complex<double>>;

struct VectorField {
    Grid3 grid;
    std::array<RealArray, 3> c;

    VectorField() = default;
    explicit VectorField(const Grid3& g) : grid(g) {
        for (auto& a : c) a.assign(g.size(), 0.0);
    }
};

struct SpectralVectorField {
    Grid3 grid;
    std::array<ComplexArray, 3> c;

    SpectralVectorField() = default;
    explicit SpectralVectorField(const Grid3& g) : grid(g) {
        for (auto& a : c) a.assign(g.size(), {0.0, 0.0});
    }
};

struct ScalarField {
    Grid3 grid;
    RealArray v;

    ScalarField() = default;
    explicit ScalarField(const Grid3& g) : grid(g), v(g.size(), 0.0) {}
};

inline void require_same_grid(const Grid3& a, const Grid3& b) {
    if (!(a == b)) throw std::invalid_argument("grid mismatch between fields");
}

// Trapezoid quadrature on the periodic box: h^3 * sum.
double quadrature(const Grid3& g, const RealArray& samples);
double inner(const VectorField& a, const VectorField& b);
inline double norm2(const VectorField& a) { return inner(a, a); }

// Spectral counterpart of the L2 norm squared: (h^3/n^3) * sum |f_hat|^2.
double spectral_norm2(const SpectralVectorField& a);

bool all_finite(const VectorField& f);

// True if |f| stays below tol * max|f| everywhere within margin of the
// boundary (margin measured per coordinate from the faces of the box).
bool boundary_decay_ok(const VectorField& f, double margin, double tol = 1e-8);

}  // namespace sgf

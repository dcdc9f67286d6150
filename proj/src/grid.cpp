#include "sgf/grid.hpp"

#include <cmath>

#include "sgf/simd.hpp"

namespace sgf {

double Grid3::wavenumber(int i) const {
    return 2.0 * M_PI / box_length * freq_index(i);
}

Grid3 make_grid(int n, double box_length) {
    if (n < 8) throw std::invalid_argument("grid resolution must be at least 8");
    if (n % 2 != 0) throw std::invalid_argument("grid resolution must be even");
    if (!(box_length > 0.0)) throw std::invalid_argument("box length must be positive");
    return Grid3{n, box_length};
}

double quadrature(const Grid3& g, const RealArray& samples) {
    if (samples.size() != g.size()) throw std::invalid_argument("sample array does not match grid");
    double sum = 0.0;
    for (double v : samples) sum += v;
    double h = g.spacing();
    return h * h * h * sum;
}

double inner(const VectorField& a, const VectorField& b) {
    require_same_grid(a.grid, b.grid);
    const auto& k = simd::active_kernels();
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) sum += k.dot(a.c[c].data(), b.c[c].data(), a.grid.size());
    double h = a.grid.spacing();
    return h * h * h * sum;
}

double spectral_norm2(const SpectralVectorField& a) {
    double sum = 0.0;
    for (const auto& comp : a.c)
        for (const auto& z : comp) sum += std::norm(z);
    double h = a.grid.spacing();
    return h * h * h / static_cast<double>(a.grid.size()) * sum;
}

bool all_finite(const VectorField& f) {
    for (const auto& comp : f.c)
        for (double v : comp)
            if (!std::isfinite(v)) return false;
    return true;
}

bool boundary_decay_ok(const VectorField& f, double margin, double tol) {
    const Grid3& g = f.grid;
    double global_max = 0.0, boundary_max = 0.0;
    double half = 0.5 * g.box_length;
    std::vector<bool> near(g.n);
    for (int i = 0; i < g.n; ++i) near[i] = half - std::abs(g.coord(i)) <= margin;
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                std::size_t idx = g.index(i, j, l);
                double m2 = 0.0;
                for (int c = 0; c < 3; ++c) m2 += f.c[c][idx] * f.c[c][idx];
                if (m2 > global_max) global_max = m2;
                if ((near[i] || near[j] || near[l]) && m2 > boundary_max) boundary_max = m2;
            }
    if (global_max == 0.0) return true;
    return std::sqrt(boundary_max / global_max) <= tol;
}

}  // namespace sgf

#include "sgf/spectral_ops.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "sgf/simd.hpp"

namespace sgf {
namespace {

// One c2c plan pair per resolution.  Plans are created with FFTW_ESTIMATE |
// FFTW_UNALIGNED so they can execute on any buffer; creation is serialized
// (FFTW's planner is not thread-safe), execution via fftw_execute_dft is.
struct PlanPair {
    fftw_plan fwd;
    fftw_plan bwd;
};

const PlanPair& plans_for(int n) {
    static std::mutex mu;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n) * n * n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    PlanPair pp;
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    pp.fwd = fftw_plan_dft_3d(n, n, n, p, p, FFTW_FORWARD, flags);
    pp.bwd = fftw_plan_dft_3d(n, n, n, p, p, FFTW_BACKWARD, flags);
    return cache.emplace(n, pp).first->second;
}

void execute(fftw_plan plan, ComplexArray& data) {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

void check_shape(const Grid3& g, std::size_t got) {
    if (got != g.size()) throw std::invalid_argument("field shape does not match grid");
}

}  // namespace

const RealArray& k2_table(const Grid3& g) {
    static std::mutex mu;
    static std::map<std::pair<int, double>, std::unique_ptr<RealArray>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g.n, g.box_length);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto tab = std::make_unique<RealArray>(g.size());
        for (int l = 0; l < g.n; ++l)
            for (int j = 0; j < g.n; ++j)
                for (int i = 0; i < g.n; ++i) {
                    double kx = g.wavenumber(i), ky = g.wavenumber(j), kz = g.wavenumber(l);
                    (*tab)[g.index(i, j, l)] = kx * kx + ky * ky + kz * kz;
                }
        it = cache.emplace(key, std::move(tab)).first;
    }
    return *it->second;
}

ComplexArray forward_scalar(const Grid3& g, const RealArray& f) {
    check_shape(g, f.size());
    ComplexArray out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
    execute(plans_for(g.n).fwd, out);
    return out;
}

RealArray inverse_scalar(const Grid3& g, const ComplexArray& s) {
    check_shape(g, s.size());
    ComplexArray buf = s;
    execute(plans_for(g.n).bwd, buf);
    RealArray out(s.size());
    double scale = 1.0 / static_cast<double>(g.size());
    for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real() * scale;
    return out;
}

SpectralVectorField forward(const VectorField& f) {
    SpectralVectorField out(f.grid);
    for (int c = 0; c < 3; ++c) out.c[c] = forward_scalar(f.grid, f.c[c]);
    return out;
}

VectorField inverse(const SpectralVectorField& s) {
    VectorField out(s.grid);
    for (int c = 0; c < 3; ++c) out.c[c] = inverse_scalar(s.grid, s.c[c]);
    return out;
}

SpectralVectorField spectral_curl(const SpectralVectorField& w) {
    const Grid3& g = w.grid;
    SpectralVectorField out(g);
    const std::complex<double> I(0.0, 1.0);
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j) {
            double ky = g.wavenumber(j), kz = g.wavenumber(l);
            for (int i = 0; i < g.n; ++i) {
                double kx = g.wavenumber(i);
                std::size_t idx = g.index(i, j, l);
                out.c[0][idx] = I * (ky * w.c[2][idx] - kz * w.c[1][idx]);
                out.c[1][idx] = I * (kz * w.c[0][idx] - kx * w.c[2][idx]);
                out.c[2][idx] = I * (kx * w.c[1][idx] - ky * w.c[0][idx]);
            }
        }
    return out;
}

SpectralVectorField spectral_laplacian(const SpectralVectorField& w) {
    SpectralVectorField out = w;
    const RealArray& k2 = k2_table(w.grid);
    RealArray m(k2.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = -k2[i];
    const auto& k = simd::active_kernels();
    for (int c = 0; c < 3; ++c) k.scale_complex(out.c[c].data(), m.data(), m.size());
    return out;
}

SpectralVectorField spectral_bilaplacian(const SpectralVectorField& w) {
    SpectralVectorField out = w;
    const RealArray& k2 = k2_table(w.grid);
    RealArray m(k2.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = k2[i] * k2[i];
    const auto& k = simd::active_kernels();
    for (int c = 0; c < 3; ++c) k.scale_complex(out.c[c].data(), m.data(), m.size());
    return out;
}

SpectralVectorField spectral_gradient(const Grid3& g, const ComplexArray& f) {
    check_shape(g, f.size());
    SpectralVectorField out(g);
    const std::complex<double> I(0.0, 1.0);
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j) {
            double ky = g.wavenumber(j), kz = g.wavenumber(l);
            for (int i = 0; i < g.n; ++i) {
                double kx = g.wavenumber(i);
                std::size_t idx = g.index(i, j, l);
                out.c[0][idx] = I * kx * f[idx];
                out.c[1][idx] = I * ky * f[idx];
                out.c[2][idx] = I * kz * f[idx];
            }
        }
    return out;
}

SpectralVectorField leray_project(const SpectralVectorField& w) {
    const Grid3& g = w.grid;
    SpectralVectorField out = w;
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j) {
            double ky = g.wavenumber(j), kz = g.wavenumber(l);
            for (int i = 0; i < g.n; ++i) {
                double kx = g.wavenumber(i);
                double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 == 0.0) continue;
                std::size_t idx = g.index(i, j, l);
                std::complex<double> kdw =
                    (kx * out.c[0][idx] + ky * out.c[1][idx] + kz * out.c[2][idx]) / k2;
                out.c[0][idx] -= kx * kdw;
                out.c[1][idx] -= ky * kdw;
                out.c[2][idx] -= kz * kdw;
            }
        }
    return out;
}

SpectralVectorField biot_savart(const SpectralVectorField& w) {
    const Grid3& g = w.grid;
    double mean2 = std::norm(w.c[0][0]) + std::norm(w.c[1][0]) + std::norm(w.c[2][0]);
    double tot2 = 0.0;
    for (const auto& comp : w.c)
        for (const auto& z : comp) tot2 += std::norm(z);
    if (tot2 > 0.0 && std::sqrt(mean2) > 1e-8 * std::sqrt(tot2))
        throw std::invalid_argument("velocity reconstruction requires a mean-free vorticity");
    SpectralVectorField out(g);
    const std::complex<double> I(0.0, 1.0);
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j) {
            double ky = g.wavenumber(j), kz = g.wavenumber(l);
            for (int i = 0; i < g.n; ++i) {
                double kx = g.wavenumber(i);
                double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 == 0.0) continue;
                std::size_t idx = g.index(i, j, l);
                out.c[0][idx] = I * (ky * w.c[2][idx] - kz * w.c[1][idx]) / k2;
                out.c[1][idx] = I * (kz * w.c[0][idx] - kx * w.c[2][idx]) / k2;
                out.c[2][idx] = I * (kx * w.c[1][idx] - ky * w.c[0][idx]) / k2;
            }
        }
    return out;
}

bool dealias_keeps(const Grid3& g, int i, int j, int l) {
    int cut = g.n / 3;
    return std::abs(g.freq_index(i)) <= cut && std::abs(g.freq_index(j)) <= cut &&
           std::abs(g.freq_index(l)) <= cut;
}

SpectralVectorField dealias(const SpectralVectorField& w) {
    const Grid3& g = w.grid;
    SpectralVectorField out = w;
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                if (!dealias_keeps(g, i, j, l)) {
                    std::size_t idx = g.index(i, j, l);
                    out.c[0][idx] = out.c[1][idx] = out.c[2][idx] = 0.0;
                }
    return out;
}

SpectralVectorField fractional_neg_laplacian(const SpectralVectorField& w, double s) {
    if (s < 0.0 || s >= 1.75)
        throw std::invalid_argument("fractional order must lie in [0, 7/4)");
    double mean2 = std::norm(w.c[0][0]) + std::norm(w.c[1][0]) + std::norm(w.c[2][0]);
    double tot2 = 0.0;
    for (const auto& comp : w.c)
        for (const auto& z : comp) tot2 += std::norm(z);
    if (s > 0.0 && tot2 > 0.0 && std::sqrt(mean2) > 1e-8 * std::sqrt(tot2))
        throw std::invalid_argument("negative-order multiplier requires a mean-free field");
    SpectralVectorField out = w;
    const RealArray& k2 = k2_table(w.grid);
    RealArray m(k2.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        m[i] = k2[i] == 0.0 ? 0.0 : std::pow(k2[i], -s);
    const auto& k = simd::active_kernels();
    for (int c = 0; c < 3; ++c) k.scale_complex(out.c[c].data(), m.data(), m.size());
    return out;
}

double fractional_norm2(const SpectralVectorField& w, double p) {
    const RealArray& k2 = k2_table(w.grid);
    double sum = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < k2.size(); ++i) {
            if (k2[i] == 0.0) {
                if (p == 0.0) sum += std::norm(w.c[c][i]);
                continue;
            }
            sum += std::pow(k2[i], 2.0 * p) * std::norm(w.c[c][i]);
        }
    const Grid3& g = w.grid;
    double h = g.spacing();
    return h * h * h / static_cast<double>(g.size()) * sum;
}

double max_pointwise_magnitude(const VectorField& f) {
    double m2 = 0.0;
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        double v = f.c[0][i] * f.c[0][i] + f.c[1][i] * f.c[1][i] + f.c[2][i] * f.c[2][i];
        if (v > m2) m2 = v;
    }
    return std::sqrt(m2);
}

}  // namespace sgf

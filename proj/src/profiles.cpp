#include "sgf/profiles.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "sgf/simd.hpp"
#include "sgf/spectral_ops.hpp"

namespace sgf {
namespace {

void check_component(int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("component index must be 1, 2 or 3");
}

// p_i(X) sampled at one point: p_1 = (0, -X3, X2)/2 and cyclic shifts.
std::array<double, 3> p_at(int i, double x, double y, double z) {
    switch (i) {
        case 1: return {0.0, -0.5 * z, 0.5 * y};
        case 2: return {0.5 * z, 0.0, -0.5 * x};
        default: return {-0.5 * y, 0.5 * x, 0.0};
    }
}

double gaussian_at2(double r2) { return std::pow(4.0 * M_PI, -1.5) * std::exp(-0.25 * r2); }

struct GridKey {
    int n;
    double L;
    auto operator<=>(const GridKey&) const = default;
};

}  // namespace

ScalarField gaussian(const Grid3& g) {
    ScalarField out(g);
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                double x = g.coord(i), y = g.coord(j), z = g.coord(l);
                out.v[g.index(i, j, l)] = gaussian_at2(x * x + y * y + z * z);
            }
    return out;
}

VectorField moment_weight(int i, const Grid3& g) {
    check_component(i);
    VectorField out(g);
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int ii = 0; ii < g.n; ++ii) {
                auto v = p_at(i, g.coord(ii), g.coord(j), g.coord(l));
                std::size_t idx = g.index(ii, j, l);
                out.c[0][idx] = v[0];
                out.c[1][idx] = v[1];
                out.c[2][idx] = v[2];
            }
    return out;
}

VectorField gaussian_eigenfield(int i, const Grid3& g) {
    check_component(i);
    VectorField out(g);
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int ii = 0; ii < g.n; ++ii) {
                double x = g.coord(ii), y = g.coord(j), z = g.coord(l);
                double gv = gaussian_at2(x * x + y * y + z * z);
                auto v = p_at(i, x, y, z);
                std::size_t idx = g.index(ii, j, l);
                out.c[0][idx] = v[0] * gv;
                out.c[1][idx] = v[1] * gv;
                out.c[2][idx] = v[2] * gv;
            }
    return out;
}

const ProfileBasis& profile_basis(const Grid3& g) {
    static std::mutex mu;
    static std::map<GridKey, std::unique_ptr<ProfileBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    GridKey key{g.n, g.box_length};
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto basis = std::make_unique<ProfileBasis>();
        basis->grid = g;
        basis->G = gaussian(g);
        for (int i = 1; i <= 3; ++i) {
            basis->p[i - 1] = moment_weight(i, g);
            basis->f[i - 1] = gaussian_eigenfield(i, g);
            auto fh = forward(basis->f[i - 1]);
            fh.c[0][0] = fh.c[1][0] = fh.c[2][0] = 0.0;
            basis->v[i - 1] = inverse(biot_savart(fh));
        }
        it = cache.emplace(key, std::move(basis)).first;
    }
    return *it->second;
}

VectorField velocity_profile(int i, const Grid3& g) {
    check_component(i);
    return profile_basis(g).v[i - 1];
}

MomentVector first_moments(const VectorField& w) {
    const Grid3& g = w.grid;
    MomentVector out;
    out.boundary_ok = boundary_decay_ok(w, g.box_length / 6.0);
    // b_1 = 1/2 (int x2 w3 - int x3 w2), cyclic; the two halves are the
    // equivalent antisymmetric forms (they agree when div w = 0).
    double h = g.spacing();
    double cell = h * h * h;
    std::array<std::array<double, 3>, 3> M{};  // M[a][c] = int x_a w_c
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                double x[3] = {g.coord(i), g.coord(j), g.coord(l)};
                std::size_t idx = g.index(i, j, l);
                for (int a = 0; a < 3; ++a)
                    for (int c = 0; c < 3; ++c) M[a][c] += x[a] * w.c[c][idx];
            }
    for (auto& row : M)
        for (auto& v : row) v *= cell;
    // component pairs (a, c) for each b_i: b_1 from (x2, w3), b_2 from (x3, w1), b_3 from (x1, w2)
    const int A[3] = {1, 2, 0}, C[3] = {2, 0, 1};
    for (int i = 0; i < 3; ++i) {
        out.form_a[i] = M[A[i]][C[i]];
        out.form_b[i] = -M[C[i]][A[i]];
        out.b[i] = 0.5 * (out.form_a[i] + out.form_b[i]);
        out.discrepancy = std::max(out.discrepancy, std::abs(out.form_a[i] - out.form_b[i]));
    }
    return out;
}

namespace {

double weight_factor(double r2, int m) {
    double w = 1.0 + r2;
    double acc = 1.0;
    for (int i = 0; i < m; ++i) acc *= w;
    return acc;  // (1+|x|^2)^m
}

double weighted_l2_norm2_array(const Grid3& g, const RealArray& u, int m) {
    double sum = 0.0;
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                double x = g.coord(i), y = g.coord(j), z = g.coord(l);
                double r2 = x * x + y * y + z * z;
                double v = u[g.index(i, j, l)];
                sum += weight_factor(r2, m) * v * v;
            }
    double h = g.spacing();
    return h * h * h * sum;
}

}  // namespace

double weighted_norm(const ScalarField& u, int m, int deriv) {
    VectorField tmp(u.grid);
    tmp.c[0] = u.v;
    // reuse the vector-field path with a single active component
    double n0 = weighted_norm(tmp, m, deriv);
    return n0;
}

double weighted_norm(const VectorField& u, int m, int deriv) {
    if (m < 0 || m > 4) throw std::invalid_argument("weight order must lie in {0,...,4}");
    if (deriv < 0 || deriv > 2) throw std::invalid_argument("derivative order must be 0, 1 or 2");
    const Grid3& g = u.grid;
    double sum = 0.0;
    if (deriv == 0) {
        for (int c = 0; c < 3; ++c) sum += weighted_l2_norm2_array(g, u.c[c], m);
    } else {
        auto uh = forward(u);
        const std::complex<double> I(0.0, 1.0);
        for (int c = 0; c < 3; ++c) {
            if (deriv == 1) {
                for (int d = 0; d < 3; ++d) {
                    ComplexArray dc(g.size());
                    for (int l = 0; l < g.n; ++l)
                        for (int j = 0; j < g.n; ++j)
                            for (int i = 0; i < g.n; ++i) {
                                double k[3] = {g.wavenumber(i), g.wavenumber(j), g.wavenumber(l)};
                                std::size_t idx = g.index(i, j, l);
                                dc[idx] = I * k[d] * uh.c[c][idx];
                            }
                    sum += weighted_l2_norm2_array(g, inverse_scalar(g, dc), m);
                }
            } else {
                for (int d1 = 0; d1 < 3; ++d1)
                    for (int d2 = 0; d2 < 3; ++d2) {
                        ComplexArray dc(g.size());
                        for (int l = 0; l < g.n; ++l)
                            for (int j = 0; j < g.n; ++j)
                                for (int i = 0; i < g.n; ++i) {
                                    double k[3] = {g.wavenumber(i), g.wavenumber(j), g.wavenumber(l)};
                                    std::size_t idx = g.index(i, j, l);
                                    dc[idx] = -k[d1] * k[d2] * uh.c[c][idx];
                                }
                        sum += weighted_l2_norm2_array(g, inverse_scalar(g, dc), m);
                    }
            }
        }
    }
    return std::sqrt(sum);
}

double power_weighted_norm2(const VectorField& u, int m) {
    const Grid3& g = u.grid;
    double sum = 0.0;
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                double x = g.coord(i), y = g.coord(j), z = g.coord(l);
                double r2 = x * x + y * y + z * z;
                double wt = std::pow(r2, m);  // |x|^{2m}
                std::size_t idx = g.index(i, j, l);
                double v2 = u.c[0][idx] * u.c[0][idx] + u.c[1][idx] * u.c[1][idx] +
                            u.c[2][idx] * u.c[2][idx];
                sum += wt * v2;
            }
    double h = g.spacing();
    return h * h * h * sum;
}

MomentSplit project_moment_modes(const VectorField& W) {
    const ProfileBasis& basis = profile_basis(W.grid);
    MomentSplit out;
    out.beta = first_moments(W);
    out.R = W;
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 3; ++c)
            for (std::size_t idx = 0; idx < W.grid.size(); ++idx)
                out.R.c[c][idx] -= out.beta.b[i] * basis.f[i].c[c][idx];
    return out;
}

VectorField asymptotic_profile(const std::array<double, 3>& b, double t, double T, const Grid3& g) {
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
    if (T < 1.0) throw std::invalid_argument("time shift must be at least 1");
    double s = t + T;
    double scale = 1.0 / (s * s);
    double root = std::sqrt(s);
    VectorField out(g);
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                double X = g.coord(i) / root, Y = g.coord(j) / root, Z = g.coord(l) / root;
                double gv = gaussian_at2(X * X + Y * Y + Z * Z);
                std::size_t idx = g.index(i, j, l);
                for (int comp = 1; comp <= 3; ++comp) {
                    auto pv = p_at(comp, X, Y, Z);
                    double amp = b[comp - 1] * scale * gv;
                    out.c[0][idx] += amp * pv[0];
                    out.c[1][idx] += amp * pv[1];
                    out.c[2][idx] += amp * pv[2];
                }
            }
    return out;
}

VectorField asymptotic_profile(const MomentVector& b, double t, double T, const Grid3& g) {
    return asymptotic_profile(b.b, t, T, g);
}

VectorField asymptotic_velocity(const std::array<double, 3>& b, double t, double T, const Grid3& g) {
    auto prof = asymptotic_profile(b, t, T, g);
    auto ph = forward(prof);
    ph.c[0][0] = ph.c[1][0] = ph.c[2][0] = 0.0;
    return inverse(biot_savart(ph));
}

namespace {

// Evaluate the trigonometric interpolant of f at the uniformly rescaled
// points (scale*x_i, scale*y_j, scale*z_l).  Separable: one dense n x n
// transform per axis.  Evaluation is periodic; callers must ensure the
// field has decayed when targets wrap around the box.
VectorField resample_uniform_scale(const VectorField& f, double scale) {
    const Grid3& g = f.grid;
    int n = g.n;
    // E[i][m] = exp(i k_m (scale * x_i + L/2)) / n -- the raw DFT phases live
    // in index space, so the grid's -L/2 origin shift must be added back.
    std::vector<std::complex<double>> E(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        double xt = scale * g.coord(i) + 0.5 * g.box_length;
        for (int m = 0; m < n; ++m) {
            double phase = g.wavenumber(m) * xt;
            E[static_cast<std::size_t>(i) * n + m] =
                std::complex<double>(std::cos(phase), std::sin(phase)) / static_cast<double>(n);
        }
    }
    VectorField out(g);
    std::vector<std::complex<double>> buf(g.size()), tmp(g.size());
    for (int c = 0; c < 3; ++c) {
        ComplexArray spec = forward_scalar(g, f.c[c]);
        // axis x: buf[i,j,l] = sum_m E[i][m] spec[m,j,l]
        for (int l = 0; l < n; ++l)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    std::complex<double> acc = 0.0;
                    const std::complex<double>* row = &E[static_cast<std::size_t>(i) * n];
                    for (int m = 0; m < n; ++m) acc += row[m] * spec[g.index(m, j, l)];
                    buf[g.index(i, j, l)] = acc;
                }
        // axis y
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    std::complex<double> acc = 0.0;
                    const std::complex<double>* row = &E[static_cast<std::size_t>(j) * n];
                    for (int m = 0; m < n; ++m) acc += row[m] * buf[g.index(i, m, l)];
                    tmp[g.index(i, j, l)] = acc;
                }
        // axis z
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l) {
                    std::complex<double> acc = 0.0;
                    const std::complex<double>* row = &E[static_cast<std::size_t>(l) * n];
                    for (int m = 0; m < n; ++m) acc += row[m] * tmp[g.index(i, j, m)];
                    out.c[c][g.index(i, j, l)] = acc.real();
                }
    }
    return out;
}

}  // namespace

VectorField to_scaled(const VectorField& w, double t, double T) {
    if (T < 1.0) throw std::invalid_argument("time shift must be at least 1");
    double s = t + T;
    double root = std::sqrt(s);
    if (root > 1.0 && !boundary_decay_ok(w, w.grid.box_length / 6.0))
        throw std::runtime_error(
            "rescaling targets leave the box and the field has not decayed at the boundary");
    VectorField out = resample_uniform_scale(w, root);
    const Grid3& g = w.grid;
    double half = 0.5 * g.box_length;
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                // Targets outside the fundamental box would sample a periodic
                // image from the core; the true field is (by the decay guard)
                // negligible there, so those points are set to zero instead.
                bool outside = std::abs(root * g.coord(i)) > half ||
                               std::abs(root * g.coord(j)) > half ||
                               std::abs(root * g.coord(l)) > half;
                std::size_t idx = g.index(i, j, l);
                for (int c = 0; c < 3; ++c) out.c[c][idx] = outside ? 0.0 : s * out.c[c][idx];
            }
    return out;
}

VectorField from_scaled(const VectorField& W, double t, double T) {
    double s = t + T;
    VectorField out = resample_uniform_scale(W, 1.0 / std::sqrt(s));
    for (auto& comp : out.c)
        for (auto& v : comp) v /= s;
    return out;
}

const ScalarField& taper(const Grid3& g) {
    static std::mutex mu;
    static std::map<GridKey, std::unique_ptr<ScalarField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    GridKey key{g.n, g.box_length};
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto field = std::make_unique<ScalarField>(g);
        double r0 = 0.45 * g.box_length, width = 0.05 * g.box_length;
        for (int l = 0; l < g.n; ++l)
            for (int j = 0; j < g.n; ++j)
                for (int i = 0; i < g.n; ++i) {
                    double x = g.coord(i), y = g.coord(j), z = g.coord(l);
                    double r = std::sqrt(x * x + y * y + z * z);
                    double v;
                    if (r <= r0) {
                        v = 1.0;
                    } else if (r >= r0 + width) {
                        v = 0.0;
                    } else {
                        double zz = (r - r0) / width;
                        v = std::exp(1.0 - 1.0 / (1.0 - zz * zz));
                    }
                    field->v[g.index(i, j, l)] = v;
                }
        it = cache.emplace(key, std::move(field)).first;
    }
    return *it->second;
}

VectorField radial_drift(const VectorField& W) {
    const Grid3& g = W.grid;
    auto wh = forward(W);
    const ScalarField& tp = taper(g);
    VectorField out(g);
    const std::complex<double> I(0.0, 1.0);
    for (int c = 0; c < 3; ++c) {
        std::array<RealArray, 3> grad;
        for (int d = 0; d < 3; ++d) {
            ComplexArray dc(g.size());
            for (int l = 0; l < g.n; ++l)
                for (int j = 0; j < g.n; ++j)
                    for (int i = 0; i < g.n; ++i) {
                        double k[3] = {g.wavenumber(i), g.wavenumber(j), g.wavenumber(l)};
                        std::size_t idx = g.index(i, j, l);
                        dc[idx] = I * k[d] * wh.c[c][idx];
                    }
            grad[d] = inverse_scalar(g, dc);
        }
        for (int l = 0; l < g.n; ++l)
            for (int j = 0; j < g.n; ++j)
                for (int i = 0; i < g.n; ++i) {
                    double x = g.coord(i), y = g.coord(j), z = g.coord(l);
                    std::size_t idx = g.index(i, j, l);
                    out.c[c][idx] = 0.5 * tp.v[idx] *
                                    (x * grad[0][idx] + y * grad[1][idx] + z * grad[2][idx]);
                }
    }
    return out;
}

VectorField apply_generator(const VectorField& W) {
    auto lap = inverse(spectral_laplacian(forward(W)));
    VectorField drift = radial_drift(W);
    VectorField out(W.grid);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < W.grid.size(); ++i)
            out.c[c][i] = lap.c[c][i] + W.c[c][i] + drift.c[c][i];
    return out;
}

}  // namespace sgf

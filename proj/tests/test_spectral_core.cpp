#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "sgf/grid.hpp"
#include "sgf/identities.hpp"
#include "sgf/simd.hpp"
#include "sgf/spectral_ops.hpp"

using namespace sgf;

namespace {

VectorField random_field(const Grid3& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    VectorField f(g);
    for (auto& comp : f.c)
        for (auto& v : comp) v = nd(rng);
    return f;
}

double rel_l2_diff(const VectorField& a, const VectorField& b) {
    VectorField d(a.grid);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a.grid.size(); ++i) d.c[c][i] = a.c[c][i] - b.c[c][i];
    return std::sqrt(norm2(d) / std::max(norm2(b), 1e-300));
}

double spectral_div_max(const SpectralVectorField& w) {
    const Grid3& g = w.grid;
    double m = 0.0;
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                std::size_t idx = g.index(i, j, l);
                std::complex<double> d = g.wavenumber(i) * w.c[0][idx] +
                                         g.wavenumber(j) * w.c[1][idx] +
                                         g.wavenumber(l) * w.c[2][idx];
                m = std::max(m, std::abs(d));
            }
    return m;
}

}  // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(make_grid(7, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(16, -1.0), std::invalid_argument);
    Grid3 g = make_grid(16, 8.0);
    CHECK(g.spacing() == doctest::Approx(0.5));
    CHECK(g.coord(8) == doctest::Approx(0.0));
    CHECK(g.freq_index(15) == -1);
    CHECK(g.wavenumber(1) == doctest::Approx(2.0 * M_PI / 8.0));
}

TEST_CASE("transform round trip and Parseval") {
    Grid3 g = make_grid(24, 10.0);
    VectorField w = random_field(g, 1);
    VectorField back = inverse(forward(w));
    CHECK(rel_l2_diff(back, w) < 1e-12);
    CHECK(spectral_norm2(forward(w)) == doctest::Approx(norm2(w)).epsilon(1e-12));
}

TEST_CASE("single-mode derivatives are exact") {
    Grid3 g = make_grid(16, 2.0 * M_PI);  // integer wavenumbers
    VectorField w(g);
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                w.c[2][g.index(i, j, l)] = std::sin(2.0 * g.coord(i));
    auto wh = forward(w);
    // curl of (0,0,sin 2x) = (0, -2 cos 2x, 0)
    VectorField cw = inverse(spectral_curl(wh));
    for (int i = 0; i < g.n; ++i) {
        double expect = -2.0 * std::cos(2.0 * g.coord(i));
        CHECK(cw.c[1][g.index(i, 3, 5)] == doctest::Approx(expect).epsilon(1e-12));
        CHECK(std::abs(cw.c[0][g.index(i, 3, 5)]) < 1e-12);
    }
    VectorField lw = inverse(spectral_laplacian(wh));
    VectorField bw = inverse(spectral_bilaplacian(wh));
    for (int i = 0; i < g.n; ++i) {
        std::size_t idx = g.index(i, 2, 9);
        CHECK(lw.c[2][idx] == doctest::Approx(-4.0 * w.c[2][idx]).epsilon(1e-12));
        CHECK(bw.c[2][idx] == doctest::Approx(16.0 * w.c[2][idx]).epsilon(1e-12));
    }
}

TEST_CASE("curl of a gradient vanishes") {
    Grid3 g = make_grid(24, 10.0);
    std::mt19937 rng(2);
    std::normal_distribution<double> nd;
    RealArray phi(g.size());
    for (auto& v : phi) v = nd(rng);
    auto grad = spectral_gradient(g, forward_scalar(g, phi));
    VectorField cg = inverse(spectral_curl(grad));
    CHECK(std::sqrt(norm2(cg)) < 1e-10 * std::sqrt(quadrature(g, phi) + norm2(inverse(grad)) + 1.0));
}

TEST_CASE("divergence of a curl vanishes") {
    Grid3 g = make_grid(24, 10.0);
    auto wh = spectral_curl(forward(random_field(g, 3)));
    CHECK(spectral_div_max(wh) < 1e-9);
}

TEST_CASE("Leray projection is idempotent, self-adjoint and divergence free") {
    Grid3 g = make_grid(20, 7.0);
    VectorField a = random_field(g, 4), b = random_field(g, 5);
    auto pa = leray_project(forward(a));
    CHECK(spectral_div_max(pa) < 1e-9);
    auto ppa = leray_project(pa);
    CHECK(rel_l2_diff(inverse(ppa), inverse(pa)) < 1e-13);
    // (Pa, b) = (a, Pb)
    VectorField Pa = inverse(pa), Pb = inverse(leray_project(forward(b)));
    CHECK(inner(Pa, b) == doctest::Approx(inner(a, Pb)).epsilon(1e-11));
}

TEST_CASE("velocity reconstruction inverts the curl") {
    Grid3 g = make_grid(24, 10.0);
    auto wh = spectral_curl(leray_project(forward(random_field(g, 6))));
    auto uh = biot_savart(wh);
    CHECK(spectral_div_max(uh) < 1e-9);
    // curl u = w for mean-free divergence-free w
    CHECK(rel_l2_diff(inverse(spectral_curl(uh)), inverse(wh)) < 1e-11);
}

TEST_CASE("velocity reconstruction rejects a mean-flow component") {
    Grid3 g = make_grid(16, 5.0);
    VectorField w(g);
    for (auto& v : w.c[0]) v = 1.0;
    CHECK_THROWS_AS(biot_savart(forward(w)), std::invalid_argument);
}

TEST_CASE("velocity gradient is controlled by the vorticity") {
    // ||grad u||_{L2} <= ||w||_{L2} for u reconstructed from w; the discrete
    // ratio must respect the bound and be stable under grid refinement.
    double prev = 0.0;
    for (int n : {24, 32}) {
        Grid3 g = make_grid(n, 10.0);
        auto wh = spectral_curl(forward(random_divfree_field(g, 17)));
        auto uh = biot_savart(wh);
        const RealArray& k2 = k2_table(g);
        double grad2 = 0.0;
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < g.size(); ++i) grad2 += k2[i] * std::norm(uh.c[c][i]);
        double h = g.spacing();
        grad2 *= h * h * h / static_cast<double>(g.size());
        double ratio = std::sqrt(grad2 / spectral_norm2(wh));
        CHECK(ratio <= 1.0 + 1e-12);
        if (prev > 0.0) CHECK(std::abs(ratio - prev) < 0.05);
        prev = ratio;
    }
}

TEST_CASE("dealiasing keeps exactly the low third of the spectrum") {
    Grid3 g = make_grid(18, 6.0);
    VectorField w = random_field(g, 7);
    auto wd = dealias(forward(w));
    auto wh = forward(w);
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                std::size_t idx = g.index(i, j, l);
                bool keep = std::abs(g.freq_index(i)) <= 6 && std::abs(g.freq_index(j)) <= 6 &&
                            std::abs(g.freq_index(l)) <= 6;
                CHECK(dealias_keeps(g, i, j, l) == keep);
                if (keep)
                    CHECK(std::abs(wd.c[0][idx] - wh.c[0][idx]) == 0.0);
                else
                    CHECK(std::abs(wd.c[0][idx]) == 0.0);
            }
}

TEST_CASE("fractional multiplier on a single mode") {
    Grid3 g = make_grid(16, 2.0 * M_PI);  // |k| = |m|
    VectorField w(g);
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                w.c[0][g.index(i, j, l)] = std::cos(2.0 * g.coord(j));  // |k| = 2
    auto wh = forward(w);
    // (-Lap)^{-1/2} divides the |k| = 2 mode by 2
    VectorField half = inverse(fractional_neg_laplacian(wh, 0.5));
    CHECK(rel_l2_diff(half, w) == doctest::Approx(0.5).epsilon(1e-12));
    // ||(-Lap)^p w||^2 = |k|^{4p} ||w||^2 on a single mode
    CHECK(fractional_norm2(wh, 0.75) ==
          doctest::Approx(std::pow(4.0, 1.5) * norm2(w)).epsilon(1e-12));
    CHECK(fractional_norm2(wh, -1.0) == doctest::Approx(norm2(w) / 16.0).epsilon(1e-12));
    CHECK_THROWS_AS(fractional_neg_laplacian(wh, 1.75), std::invalid_argument);
    CHECK_THROWS_AS(fractional_neg_laplacian(wh, -0.1), std::invalid_argument);
}

TEST_CASE("fractional multiplier rejects fields with mean flow") {
    Grid3 g = make_grid(16, 5.0);
    VectorField w(g);
    for (auto& v : w.c[1]) v = 2.0;
    CHECK_THROWS_AS(fractional_neg_laplacian(forward(w), 0.5), std::invalid_argument);
}

TEST_CASE("quadrature, finiteness and boundary decay helpers") {
    Grid3 g = make_grid(32, 20.0);
    RealArray one(g.size(), 1.0);
    CHECK(quadrature(g, one) == doctest::Approx(20.0 * 20.0 * 20.0).epsilon(1e-13));

    VectorField gauss(g);
    for (int l = 0; l < g.n; ++l)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                double x = g.coord(i), y = g.coord(j), z = g.coord(l);
                gauss.c[0][g.index(i, j, l)] = std::exp(-(x * x + y * y + z * z));
            }
    CHECK(boundary_decay_ok(gauss, g.box_length / 6.0));
    CHECK(all_finite(gauss));

    VectorField flat(g);
    for (auto& v : flat.c[2]) v = 1.0;
    CHECK_FALSE(boundary_decay_ok(flat, g.box_length / 6.0));
    flat.c[0][5] = std::nan("");
    CHECK_FALSE(all_finite(flat));
}

TEST_CASE("scalar and vector kernels agree") {
    const auto& s = simd::scalar_kernels();
    const auto& a = simd::active_kernels();
    INFO("active kernel set: ", a.name);
    std::mt19937 rng(9);
    std::normal_distribution<double> nd;
    const std::size_t n = 1003;  // odd length exercises the tails
    std::vector<double> x(n), y(n), w(n);
    std::vector<std::complex<double>> z(n), z2(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = nd(rng);
        y[i] = nd(rng);
        w[i] = nd(rng);
        z[i] = {nd(rng), nd(rng)};
        z2[i] = z[i];
    }
    CHECK(a.dot(x.data(), y.data(), n) ==
          doctest::Approx(s.dot(x.data(), y.data(), n)).epsilon(1e-12));
    CHECK(a.weighted_dot(w.data(), x.data(), y.data(), n) ==
          doctest::Approx(s.weighted_dot(w.data(), x.data(), y.data(), n)).epsilon(1e-12));

    s.scale_complex(z.data(), w.data(), n);
    a.scale_complex(z2.data(), w.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(z[i] - z2[i]) < 1e-14);

    std::vector<double> a0(n), a1(n), a2(n), b0(n), b1(n), b2(n);
    std::vector<double> c0s(n), c1s(n), c2s(n), c0a(n), c1a(n), c2a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a0[i] = nd(rng); a1[i] = nd(rng); a2[i] = nd(rng);
        b0[i] = nd(rng); b1[i] = nd(rng); b2[i] = nd(rng);
    }
    s.cross3(a0.data(), a1.data(), a2.data(), b0.data(), b1.data(), b2.data(),
             c0s.data(), c1s.data(), c2s.data(), n);
    a.cross3(a0.data(), a1.data(), a2.data(), b0.data(), b1.data(), b2.data(),
             c0a.data(), c1a.data(), c2a.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(c0s[i] == doctest::Approx(c0a[i]).epsilon(1e-14));
        CHECK(c1s[i] == doctest::Approx(c1a[i]).epsilon(1e-14));
        CHECK(c2s[i] == doctest::Approx(c2a[i]).epsilon(1e-14));
    }
}

#include "sgf/diagnostics.hpp"

#include <cmath>

#include "sgf/spectral_ops.hpp"

namespace sgf {
namespace {

double grad_norm2(const SpectralVectorField& rh) {
    const RealArray& k2 = k2_table(rh.grid);
    double sum = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < k2.size(); ++i) sum += k2[i] * std::norm(rh.c[c][i]);
    double h = rh.grid.spacing();
    return h * h * h / static_cast<double>(rh.grid.size()) * sum;
}

double lap_norm2(const SpectralVectorField& rh) {
    const RealArray& k2 = k2_table(rh.grid);
    double sum = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < k2.size(); ++i)
            sum += k2[i] * k2[i] * std::norm(rh.c[c][i]);
    double h = rh.grid.spacing();
    return h * h * h / static_cast<double>(rh.grid.size()) * sum;
}

double lp_norm(const VectorField& d, double p) {
    const Grid3& g = d.grid;
    double h = g.spacing();
    if (p == 1.0) {
        double sum = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            sum += std::sqrt(d.c[0][i] * d.c[0][i] + d.c[1][i] * d.c[1][i] +
                             d.c[2][i] * d.c[2][i]);
        return h * h * h * sum;
    }
    if (p == 2.0) return std::sqrt(norm2(d));
    if (p == 0.0 || std::isinf(p)) return max_pointwise_magnitude(d);
    throw std::invalid_argument("only p = 1, 2 or inf (0) norms are supported");
}

}  // namespace

EnergyReport energy_sample(const SimState& state, const SimParams& params, double K) {
    const Grid3& g = state.what.grid;
    double s = state.t + params.T;
    EnergyReport rep;
    rep.t = state.t;
    rep.tau = std::log(s);

    VectorField w = inverse(state.what);
    MomentVector m = first_moments(w);
    rep.b = m.b;
    for (int i = 0; i < 3; ++i) rep.beta[i] = m.b[i] / s;

    VectorField prof = asymptotic_profile(m.b, state.t, params.T, g);
    VectorField r(g);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.size(); ++i) r.c[c][i] = w.c[c][i] - prof.c[c][i];

    auto rh = forward(r);
    rh.c[0][0] = rh.c[1][0] = rh.c[2][0] = 0.0;

    double s1 = 0.5 * params.theta + 1.0;  // order for the base negative norm
    double s2 = 0.5 * (params.theta + 1.0);
    double r2 = spectral_norm2(rh);
    double gr2 = grad_norm2(rh);
    double lp2 = lap_norm2(rh);
    double neg1 = fractional_norm2(rh, -s1);
    double neg2 = fractional_norm2(rh, -s2);

    VectorField lap_r = inverse(spectral_laplacian(rh));
    VectorField helm(g);  // r - alpha Lap r
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.size(); ++i)
            helm.c[c][i] = r.c[c][i] - params.alpha * lap_r.c[c][i];
    double x4helm = power_weighted_norm2(helm, 4);

    // Scaled-variable norms via the exact change-of-variables relations.
    rep.E0 = 0.5 * (std::pow(s, 0.5 - 2.0 * s1) * neg1 +
                    params.alpha / s * std::pow(s, 0.5 - 2.0 * s2) * neg2);
    rep.E1 = 0.5 * std::sqrt(s) * (r2 + params.alpha * gr2);
    rep.E2 = 6.0 * rep.E0 + rep.E1;
    rep.E3 = 0.5 * std::pow(s, 1.5) * (gr2 + params.alpha * lp2);
    rep.E4 = 12.0 * rep.E2 + rep.E3;
    rep.E5 = 0.5 * std::pow(s, -3.5) * x4helm;
    rep.E6 = K * rep.E4 + rep.E5;

    rep.norms["r_l2_2"] = r2;
    rep.norms["grad_r_2"] = gr2;
    rep.norms["lap_r_2"] = lp2;
    rep.norms["neg_s1_2"] = neg1;
    rep.norms["neg_s2_2"] = neg2;
    rep.norms["x4_helm_r_2"] = x4helm;
    rep.norms["w_l2_2"] = spectral_norm2(state.what);

    rep.err_L1 = lp_norm(r, 1.0);
    rep.err_L2 = lp_norm(r, 2.0);
    rep.err_Linf = lp_norm(r, 0.0);
    {
        auto wh = state.what;
        wh.c[0][0] = wh.c[1][0] = wh.c[2][0] = 0.0;
        VectorField u = inverse(biot_savart(wh));
        VectorField vcmp = asymptotic_velocity(m.b, state.t, params.T, g);
        VectorField du(g);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < g.size(); ++i) du.c[c][i] = u.c[c][i] - vcmp.c[c][i];
        rep.err_vel_L2 = lp_norm(du, 2.0);
    }

    // Global-boundedness monitor on the full field w (not the remainder).
    {
        auto wh = state.what;
        double wg2 = grad_norm2(wh);
        double wl2 = lap_norm2(wh);
        VectorField lap_w = inverse(spectral_laplacian(wh));
        double env = 0.0;
        const double binom[5] = {1, 4, 6, 4, 1};
        for (int jj = 0; jj <= 4; ++jj)
            env += binom[jj] * std::pow(s, 0.5 - jj) * power_weighted_norm2(w, jj);
        env += std::pow(s, 1.5) * wg2;
        env += params.alpha * std::pow(s, 1.5) * wl2;
        env += params.alpha * params.alpha * std::pow(s, -3.5) * power_weighted_norm2(lap_w, 4);
        rep.envelope = env;
    }
    return rep;
}

double profile_error(const SimState& state, const std::array<double, 3>& b,
                     const SimParams& params, double p, ProfileErrorVariant variant) {
    const Grid3& g = state.what.grid;
    if (variant == ProfileErrorVariant::Velocity) {
        auto wh = state.what;
        wh.c[0][0] = wh.c[1][0] = wh.c[2][0] = 0.0;
        VectorField u = inverse(biot_savart(wh));
        VectorField vcmp = asymptotic_velocity(b, state.t, params.T, g);
        VectorField d(g);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < g.size(); ++i) d.c[c][i] = u.c[c][i] - vcmp.c[c][i];
        return lp_norm(d, p);
    }
    VectorField w = inverse(state.what);
    VectorField prof = asymptotic_profile(b, state.t, params.T, g);
    VectorField d(g);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.size(); ++i) d.c[c][i] = w.c[c][i] - prof.c[c][i];
    if (variant == ProfileErrorVariant::Helmholtz) {
        auto dh = forward(d);
        VectorField lap_d = inverse(spectral_laplacian(dh));
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < g.size(); ++i)
                d.c[c][i] -= params.alpha * lap_d.c[c][i];
    }
    return lp_norm(d, p);
}

DecayFit fit_decay(const std::vector<SeriesSample>& series, double T, double t_lo, double t_hi,
                   const std::string& name, double predicted) {
    std::vector<double> xs, ys;
    for (const auto& s : series) {
        if (s.t < t_lo || s.t > t_hi) continue;
        if (!(s.value > 0.0))
            throw std::invalid_argument("decay fit requires positive values ('" + name + "')");
        xs.push_back(std::log(s.t + T));
        ys.push_back(std::log(s.value));
    }
    if (xs.size() < 2)
        throw std::invalid_argument("decay fit needs at least two samples in the window ('" +
                                    name + "')");
    std::size_t n = xs.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) mx += xs[i], my += ys[i];
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("decay fit window has zero log-time spread");

    DecayFit fit;
    fit.quantity = name;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.predicted = predicted;
    fit.n_samples = static_cast<int>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double res = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += res * res;
    }
    // RMS log-residual measured against the log-time spread: the scale on
    // which the slope estimate itself can move.
    fit.residual = std::sqrt(ss / n) / std::sqrt(sxx / n);
    return fit;
}

DecayFit fit_decay_tail(const std::vector<SeriesSample>& series, double T,
                        const std::string& name, double predicted) {
    if (series.size() < 2) throw std::invalid_argument("decay fit needs at least two samples");
    double x0 = std::log(series.front().t + T);
    double x1 = std::log(series.back().t + T);
    double t_lo = std::exp(0.5 * (x0 + x1)) - T;
    return fit_decay(series, T, t_lo, series.back().t, name, predicted);
}

}  // namespace sgf

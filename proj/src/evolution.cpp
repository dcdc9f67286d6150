#include "sgf/evolution.hpp"

#include <cmath>
#include <random>

#include "sgf/identities.hpp"
#include "sgf/simd.hpp"
#include "sgf/spectral_ops.hpp"

namespace sgf {

void SimParams::validate() const {
    if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be nonnegative");
    if (T < 1.0) throw std::invalid_argument("time shift T must be at least 1");
    if (theta <= 0.0 || theta >= 1.5) throw std::invalid_argument("theta must lie in (0, 3/2)");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (t_end < 0.0) throw std::invalid_argument("t_end must be nonnegative");
    if (output_every < 1) throw std::invalid_argument("output_every must be at least 1");
    if (K <= 0.0) throw std::invalid_argument("energy combination constant K must be positive");
    if (cfl <= 0.0) throw std::invalid_argument("cfl must be positive");
}

double linear_symbol(double k2, const SimParams& p) {
    return -(k2 + p.epsilon * k2 * k2) / (1.0 + p.alpha * k2);
}

SpectralVectorField nonlinear_rhs(const SpectralVectorField& what, const SimParams& p,
                                  double* max_velocity) {
    const Grid3& g = what.grid;
    SpectralVectorField wd = dealias(what);
    wd.c[0][0] = wd.c[1][0] = wd.c[2][0] = 0.0;

    VectorField u = inverse(biot_savart(wd));

    SpectralVectorField qh = wd;  // q = w - alpha Lap w
    const RealArray& k2 = k2_table(g);
    {
        RealArray m(k2.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = 1.0 + p.alpha * k2[i];
        const auto& k = simd::active_kernels();
        for (int c = 0; c < 3; ++c) k.scale_complex(qh.c[c].data(), m.data(), m.size());
    }
    VectorField q = inverse(qh);

    if (max_velocity) *max_velocity = max_pointwise_magnitude(u);

    VectorField cr(g);
    simd::active_kernels().cross3(q.c[0].data(), q.c[1].data(), q.c[2].data(),
                                  u.c[0].data(), u.c[1].data(), u.c[2].data(),
                                  cr.c[0].data(), cr.c[1].data(), cr.c[2].data(), g.size());

    SpectralVectorField out = spectral_curl(dealias(forward(cr)));
    {
        RealArray m(k2.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = -1.0 / (1.0 + p.alpha * k2[i]);
        const auto& k = simd::active_kernels();
        for (int c = 0; c < 3; ++c) k.scale_complex(out.c[c].data(), m.data(), m.size());
    }
    out.c[0][0] = out.c[1][0] = out.c[2][0] = 0.0;
    return out;
}

namespace {

RealArray exp_symbol_table(const Grid3& g, const SimParams& p) {
    const RealArray& k2 = k2_table(g);
    RealArray E(k2.size());
    for (std::size_t i = 0; i < E.size(); ++i) E[i] = std::exp(p.dt * linear_symbol(k2[i], p));
    return E;
}

void scale_all(SpectralVectorField& f, const RealArray& m) {
    const auto& k = simd::active_kernels();
    for (int c = 0; c < 3; ++c) k.scale_complex(f.c[c].data(), m.data(), m.size());
}

}  // namespace

SimState step(const SimState& state, const SimParams& p) {
    const Grid3& g = state.what.grid;
    RealArray E = exp_symbol_table(g, p);

    SimState out;
    out.t = state.t + p.dt;

    if (!p.nonlinear) {
        out.what = state.what;
        scale_all(out.what, E);
        return out;
    }

    double maxu = 0.0;
    SpectralVectorField N1 = nonlinear_rhs(state.what, p, &maxu);
    double h = g.spacing();
    if (maxu * p.dt > p.cfl * h) {
        double suggested = p.cfl * h / maxu;
        throw CflError(suggested, "advective CFL violated: max|u| dt / h = " +
                                      std::to_string(maxu * p.dt / h) +
                                      "; reduce dt to about " + std::to_string(suggested));
    }

    // Integrating-factor Heun: exact on the linear part, second order overall.
    SpectralVectorField ws(g);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.size(); ++i)
            ws.c[c][i] = E[i] * (state.what.c[c][i] + p.dt * N1.c[c][i]);

    SpectralVectorField N2 = nonlinear_rhs(ws, p);

    out.what = SpectralVectorField(g);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.size(); ++i)
            out.what.c[c][i] = E[i] * state.what.c[c][i] +
                               0.5 * p.dt * (E[i] * N1.c[c][i] + N2.c[c][i]);
    out.what.c[0][0] = out.what.c[1][0] = out.what.c[2][0] = 0.0;
    return out;
}

SimState evolve(const VectorField& w0, const SimParams& p, const Observer& observer) {
    p.validate();
    check_box_horizon(w0.grid, p);

    SimState state;
    state.t = 0.0;
    state.what = forward(w0);
    state.what.c[0][0] = state.what.c[1][0] = state.what.c[2][0] = 0.0;

    long nsteps = std::lround(p.t_end / p.dt);
    if (std::abs(nsteps * p.dt - p.t_end) > 1e-9 * std::max(1.0, p.t_end))
        throw std::invalid_argument("t_end must be an integer multiple of dt");

    if (observer) observer(state.t, state);
    for (long i = 1; i <= nsteps; ++i) {
        state = step(state, p);
        state.t = i * p.dt;  // avoid accumulated roundoff in the clock
        bool report = observer && (i % p.output_every == 0 || i == nsteps);
        if (report || i == nsteps) {
            double n2 = spectral_norm2(state.what);
            if (!std::isfinite(n2))
                throw std::runtime_error("solution lost finiteness at t = " +
                                         std::to_string(state.t));
        }
        if (report) observer(state.t, state);
    }
    return state;
}

SmallnessReport smallness_lhs(const VectorField& W0, const SimParams& p, double gamma) {
    SmallnessReport r;
    double w4 = weighted_norm(W0, 4);
    double gr = weighted_norm(W0, 0, 1);
    double lap = weighted_norm(W0, 0, 2);
    auto laph = spectral_laplacian(forward(W0));
    double x4lap2 = power_weighted_norm2(inverse(laph), 4);
    double invT = 1.0 / p.T;  // e^{-tau0} with tau0 = log T
    r.terms[0] = w4 * w4;
    r.terms[1] = gr * gr;
    r.terms[2] = p.alpha * invT * lap * lap;
    r.terms[3] = p.alpha * p.alpha * invT * invT * x4lap2;
    r.value = r.terms[0] + r.terms[1] + r.terms[2] + r.terms[3];
    r.threshold = gamma * (1.5 - p.theta) * (1.5 - p.theta);
    r.pass = r.value <= r.threshold;
    return r;
}

SmallnessReport smallness_lhs_unscaled(const VectorField& w0, const SimParams& p, double gamma) {
    SmallnessReport r;
    double T = p.T;
    double l2 = norm2(w0);
    double x4 = power_weighted_norm2(w0, 4);
    double gr = weighted_norm(w0, 0, 1);
    double lap = weighted_norm(w0, 0, 2);
    double x4lap = power_weighted_norm2(inverse(spectral_laplacian(forward(w0))), 4);
    r.terms[0] = std::sqrt(T) * l2;
    r.terms[1] = std::pow(T, -3.5) * x4;
    r.terms[2] = std::pow(T, 1.5) * (gr * gr + p.alpha * lap * lap);
    r.terms[3] = p.alpha * p.alpha * std::pow(T, -1.5) * x4lap;
    r.value = r.terms[0] + r.terms[1] + r.terms[2] + r.terms[3];
    r.threshold = gamma * (1.5 - p.theta) * (1.5 - p.theta);
    r.pass = r.value <= r.threshold;
    return r;
}

InitKind parse_init_kind(const std::string& name) {
    if (name == "profile-multiple" || name == "profile") return InitKind::ProfileMultiple;
    if (name == "random-divfree" || name == "random") return InitKind::GaussianRandomDivFree;
    if (name == "perturbed-profile") return InitKind::PerturbedProfile;
    throw std::invalid_argument("unknown initial-data kind '" + name +
                                "' (expected profile-multiple, random-divfree or "
                                "perturbed-profile)");
}

VectorField make_initial_data(InitKind kind, double amplitude, unsigned seed, const Grid3& g,
                              const std::array<double, 3>& coeffs) {
    const ProfileBasis& basis = profile_basis(g);
    VectorField out(g);

    auto add_profiles = [&](double scale) {
        for (int i = 0; i < 3; ++i) {
            if (coeffs[i] == 0.0) continue;
            for (int c = 0; c < 3; ++c)
                for (std::size_t idx = 0; idx < g.size(); ++idx)
                    out.c[c][idx] += scale * coeffs[i] * basis.f[i].c[c][idx];
        }
    };
    auto add_noise = [&](double scale) {
        VectorField r = random_divfree_field(g, seed);
        double nrm = std::sqrt(norm2(r));
        if (nrm == 0.0) return;
        for (int c = 0; c < 3; ++c)
            for (std::size_t idx = 0; idx < g.size(); ++idx)
                out.c[c][idx] += scale / nrm * r.c[c][idx];
    };

    switch (kind) {
        case InitKind::ProfileMultiple:
            add_profiles(amplitude);
            break;
        case InitKind::GaussianRandomDivFree:
            add_noise(amplitude);
            break;
        case InitKind::PerturbedProfile:
            add_profiles(1.0);
            add_noise(amplitude);
            break;
    }
    return out;
}

void check_box_horizon(const Grid3& g, const SimParams& p) {
    double needed = 6.0 * std::sqrt(p.t_end + p.T);
    if (needed > g.box_length)
        throw std::invalid_argument(
            "box too small for the requested horizon: need box_length >= 6 sqrt(t_end + T) = " +
            std::to_string(needed));
}

}  // namespace sgf

// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eplab/solvers.hpp"

#include <cmath>

namespace eplab {

namespace {

void nan_guard(const RealField& f, double t) {
    if (!f.all_finite())
        throw Divergence("solver state lost finiteness at t = " + std::to_string(t), -1, t);
}

void record(TimeSeries& out, double t, const RealField& f) {
    out.times.push_back(t);
    out.fields.push_back(f);
}

}  // namespace

TimeSeries solve_transport(const RealField& a0, const TimeDependentField& v,
                           const TimeDependentField& forcing, const TimeStepper& ts,
                           double cfl_safety) {
    ts.validate();
    const Grid& g = a0.grid();
    const int n = ts.n_steps();
    const double dt = ts.effective_dt();

    // CFL: advective speed against the grid spacing.
    double vmax = 0.0;
    if (v.is_series()) {
        for (const auto& f : v.series()->fields) vmax = std::max(vmax, f.max_abs());
    } else {
        for (int j = 0; j <= n; ++j) vmax = std::max(vmax, v.at(j * dt).max_abs());
    }
    if (vmax > 0.0) {
        const double dt_max = cfl_safety * g.spacing() / vmax;
        if (dt > dt_max)
            throw CflViolation("transport: dt " + std::to_string(dt) +
                                   " violates the advective step bound; use dt <= " +
                                   std::to_string(dt_max),
                               dt_max);
    }

    auto rhs = [&](const RealField& a, const RealField& vel, const RealField& src) {
        RealField r = advect(vel, a);
        r *= -1.0;
        r += src;
        return r;
    };

    TimeSeries out;
    RealField a = a0;
    record(out, 0.0, a);
    for (int j = 0; j < n; ++j) {
        const double t = j * dt;
        const RealField v0 = v.at(t), vh = v.at(t + 0.5 * dt), v1 = v.at(t + dt);
        const RealField f0 = forcing.at(t), fh = forcing.at(t + 0.5 * dt), f1 = forcing.at(t + dt);
        RealField k1 = rhs(a, v0, f0);
        RealField y = a;
        y.axpy(0.5 * dt, k1);
        RealField k2 = rhs(y, vh, fh);
        y = a;
        y.axpy(0.5 * dt, k2);
        RealField k3 = rhs(y, vh, fh);
        y = a;
        y.axpy(dt, k3);
        RealField k4 = rhs(y, v1, f1);
        a.axpy(dt / 6.0, k1);
        a.axpy(dt / 3.0, k2);
        a.axpy(dt / 3.0, k3);
        a.axpy(dt / 6.0, k4);
        nan_guard(a, t + dt);
        if ((j + 1) % ts.snapshot_stride == 0 || j + 1 == n) record(out, (j + 1) * dt, a);
    }
    return out;
}

TimeSeries solve_heat(const RealField& theta0, double kappa_tilde,
                      const TimeDependentField& forcing, const TimeStepper& ts) {
    ts.validate();
    if (!(kappa_tilde > 0.0)) throw ConfigError("solve_heat: kappa_tilde must be positive");
    const Grid& g = theta0.grid();
    const int n = ts.n_steps();
    const double dt = ts.effective_dt();
    const double k0 = g.fundamental();

    // Diffusion factors over a full and a half step.
    std::vector<double> e_full(g.total_points()), e_half(g.total_points());
    for_each_mode(g, [&](std::size_t flat, int m0, int m1, int m2) {
        const double k2 = k0 * k0 * (1.0 * m0 * m0 + 1.0 * m1 * m1 + 1.0 * m2 * m2);
        e_full[flat] = std::exp(-kappa_tilde * k2 * dt);
        e_half[flat] = std::exp(-kappa_tilde * k2 * 0.5 * dt);
    });

    TimeSeries out;
    record(out, 0.0, theta0);
    SpectralField th = fft_forward(theta0);
    const int nc = theta0.components();
    for (int j = 0; j < n; ++j) {
        const double t = j * dt;
        SpectralField f0 = fft_forward(forcing.at(t));
        SpectralField fh = fft_forward(forcing.at(t + 0.5 * dt));
        SpectralField f1 = fft_forward(forcing.at(t + dt));
        for (int c = 0; c < nc; ++c) {
            auto thc = th.component(c);
            auto a = f0.component(c);
            auto b = fh.component(c);
            auto d = f1.component(c);
            for (std::size_t i = 0; i < thc.size(); ++i) {
                thc[i] = e_full[i] * thc[i] +
                         dt / 6.0 * (e_full[i] * a[i] + 4.0 * e_half[i] * b[i] + d[i]);
            }
        }
        RealField snap = detail::fft_inverse_real(th);
        nan_guard(snap, t + dt);
        if ((j + 1) % ts.snapshot_stride == 0 || j + 1 == n) record(out, (j + 1) * dt, snap);
    }
    return out;
}

TimeSeries solve_e_evolution(const RealField& E0, const TimeDependentField& flux,
                             const TimeStepper& ts) {
    ts.validate();
    const Grid& g = E0.grid();
    if (E0.components() != g.dim()) throw InvalidInput("solve_e_evolution: vector E0 expected");
    const int n = ts.n_steps();
    const double dt = ts.effective_dt();

    TimeSeries out;
    RealField E = E0;
    record(out, 0.0, E);
    auto proj = [](const RealField& f) { return leray_type_projection(f); };
    for (int j = 0; j < n; ++j) {
        const double t = j * dt;
        RealField p0 = proj(flux.at(t));
        RealField ph = proj(flux.at(t + 0.5 * dt));
        RealField p1 = proj(flux.at(t + dt));
        E.axpy(-dt / 6.0, p0);
        E.axpy(-4.0 * dt / 6.0, ph);
        E.axpy(-dt / 6.0, p1);
        nan_guard(E, t + dt);
        if ((j + 1) % ts.snapshot_stride == 0 || j + 1 == n) record(out, (j + 1) * dt, E);
    }
    return out;
}

}  // namespace eplab

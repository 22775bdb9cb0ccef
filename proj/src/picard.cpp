// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eplab/picard.hpp"

#include <cmath>

#include "eplab/random_fields.hpp"

namespace eplab {

namespace {

// (rho, u) pair advanced jointly by the coupled RK4.
struct RhoU {
    RealField rho;
    RealField u;

    RhoU& axpy(double a, const RhoU& o) {
        rho.axpy(a, o.rho);
        u.axpy(a, o.u);
        return *this;
    }
};

// Iterate-m data entering one step: advecting velocity, momentum source,
// heat forcing (spectral, for the integrating-factor update) and mass flux.
struct StepCoeffs {
    RealField v;
    RealField src_u;
    SpectralField F1;
    RealField flux;
};

EPState blend(const EPState& a, const EPState& b, double w) {
    EPState out = a;
    out *= (1.0 - w);
    EPState tmp = b;
    tmp *= w;
    out += tmp;
    return out;
}

StepCoeffs assemble_coeffs(const EPState& prev, const PhysicalParams& pp) {
    const Grid& g = prev.grid();
    const double gm1 = pp.gamma - 1.0;

    RealField grad_theta = gradient(prev.theta);
    RealField grad_rho = gradient(prev.rho);
    RealField lap_theta = laplacian(prev.theta);
    RealField div_u = divergence(prev.u);

    StepCoeffs c{prev.u, RealField(g, g.dim()), SpectralField(g, 1), RealField(g, g.dim())};

    // src_u = -grad(theta) - theta grad(rho) + E - u
    c.src_u = prev.E;
    c.src_u -= prev.u;
    c.src_u -= grad_theta;
    c.src_u -= multiply_dealiased(prev.theta, grad_rho);

    // F1 = -u.grad(theta) + h1(rho) lap(theta) - (gamma-1)(T_L+theta) div(u)
    //      + (gamma-1)/2 |u|^2 - theta
    RealField F1 = multiply_dealiased(compose_h1(prev.rho, pp.gamma, pp.kappa, pp.n_bar),
                                      lap_theta);
    F1 -= advect(prev.u, prev.theta);
    F1 -= prev.theta;
    {
        RealField tl_theta = prev.theta;
        for (auto& v : tl_theta.component(0)) v += pp.T_L;
        F1.axpy(-gm1, multiply_dealiased(tl_theta, div_u));
    }
    {
        RealField usq(g, 1);
        auto dst = usq.component(0);
        for (int d = 0; d < g.dim(); ++d) {
            auto ud = prev.u.component(d);
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += ud[i] * ud[i];
        }
        F1.axpy(0.5 * gm1, dealias(usq));
    }
    c.F1 = fft_forward(F1);

    // flux = h2(rho) u + n_bar u
    c.flux = multiply_dealiased(compose_h2(prev.rho, pp.n_bar), prev.u);
    c.flux.axpy(pp.n_bar, prev.u);
    return c;
}

}  // namespace

StateSeries picard_step(const StateSeries& prev, const EPState& data0, int m,
                        const PhysicalParams& pp, const TimeStepper& ts,
                        const DyadicPartition& P) {
    pp.validate();
    if (m < 0) throw InvalidInput("picard_step: m must be >= 0");
    const Grid& g = data0.grid();
    const int n = ts.n_steps();
    const double dt = ts.effective_dt();
    if (static_cast<int>(prev.times.size()) != n + 1)
        throw InvalidInput("picard_step: previous iterate must cover the step grid");

    // Explicit stability of the coupled acoustic step: the spectral
    // eigenvalues reach k_band (sqrt(T_L) + max|u|), and the RK4 stability
    // interval on the imaginary axis is 2*sqrt(2).
    {
        double umax = 0.0;
        for (const auto& st : prev.states) umax = std::max(umax, st.u.max_abs());
        const double k_band = g.band_radius() * g.fundamental();
        const double dt_max = 2.0 * std::sqrt(2.0) / (k_band * (std::sqrt(pp.T_L) + umax));
        if (dt > dt_max)
            throw CflViolation("picard_step: dt " + std::to_string(dt) +
                                   " exceeds the acoustic stability bound; use dt <= " +
                                   std::to_string(dt_max),
                               dt_max);
    }

    const double kt = pp.kappa_tilde();
    const double k0 = g.fundamental();
    std::vector<double> e_full(g.total_points()), e_half(g.total_points());
    for_each_mode(g, [&](std::size_t flat, int m0, int m1, int m2) {
        const double k2 = k0 * k0 * (1.0 * m0 * m0 + 1.0 * m1 * m1 + 1.0 * m2 * m2);
        e_full[flat] = std::exp(-kt * k2 * dt);
        e_half[flat] = std::exp(-kt * k2 * 0.5 * dt);
    });

    EPState init = mollify_initial(data0, m, P);
    StateSeries out;
    out.times.reserve(n + 1);
    out.states.reserve(n + 1);
    init.time = 0.0;
    out.times.push_back(0.0);
    out.states.push_back(init);

    RhoU y{init.rho, init.u};
    SpectralField th = fft_forward(init.theta);
    RealField E = init.E;

    auto rhs = [&](const RhoU& s, const StepCoeffs& c) {
        RhoU d{RealField(g, 1), RealField(g, g.dim())};
        d.rho = advect(c.v, s.rho);
        d.rho *= -1.0;
        d.rho -= divergence(s.u);
        d.u = gradient(s.rho);
        d.u *= -pp.T_L;
        d.u -= advect(c.v, s.u);
        d.u += c.src_u;
        return d;
    };

    StepCoeffs c0 = assemble_coeffs(prev.states[0], pp);
    for (int j = 0; j < n; ++j) {
        const double t1 = (j + 1) * dt;
        StepCoeffs ch = assemble_coeffs(blend(prev.states[j], prev.states[j + 1], 0.5), pp);
        StepCoeffs c1 = assemble_coeffs(prev.states[j + 1], pp);

        RhoU k1 = rhs(y, c0);
        RhoU w = y;
        w.axpy(0.5 * dt, k1);
        RhoU k2 = rhs(w, ch);
        w = y;
        w.axpy(0.5 * dt, k2);
        RhoU k3 = rhs(w, ch);
        w = y;
        w.axpy(dt, k3);
        RhoU k4 = rhs(w, c1);
        y.axpy(dt / 6.0, k1);
        y.axpy(dt / 3.0, k2);
        y.axpy(dt / 3.0, k3);
        y.axpy(dt / 6.0, k4);

        // theta: exact diffusion factor, Simpson in the interaction picture.
        {
            auto thc = th.component(0);
            auto a = c0.F1.component(0);
            auto b = ch.F1.component(0);
            auto d = c1.F1.component(0);
            for (std::size_t i = 0; i < thc.size(); ++i)
                thc[i] = e_full[i] * thc[i] +
                         dt / 6.0 * (e_full[i] * a[i] + 4.0 * e_half[i] * b[i] + d[i]);
        }

        // E: d_t E = -grad(Delta^{-1} div flux), Simpson quadrature.
        E.axpy(-dt / 6.0, leray_type_projection(c0.flux));
        E.axpy(-4.0 * dt / 6.0, leray_type_projection(ch.flux));
        E.axpy(-dt / 6.0, leray_type_projection(c1.flux));

        EPState snap{y.rho, y.u, detail::fft_inverse_real(th), E, t1};
        if (!snap.all_finite())
            throw Divergence("picard iterate blew up", m + 1, t1);
        out.times.push_back(t1);
        out.states.push_back(std::move(snap));
        c0 = std::move(c1);
    }
    return out;
}

namespace {

// Per-q sup over snapshots of the block L2 profile of one state component.
std::vector<double> sup_profile(const StateSeries& s, const RealField EPState::* member,
                                const DyadicPartition& P) {
    std::vector<double> sup(P.q_max() + 2, 0.0);
    for (const auto& st : s.states) {
        auto prof = block_l2_profile(fft_forward(st.*member), P);
        for (std::size_t i = 0; i < sup.size(); ++i) sup[i] = std::max(sup[i], prof[i]);
    }
    return sup;
}

double weighted_sum(const std::vector<double>& prof, double s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < prof.size(); ++i)
        acc += std::pow(2.0, (static_cast<int>(i) - 1) * s) * prof[i];
    return acc;
}

StateNorms norms_from(const StateSeries& s, const DyadicPartition& P, double s1, double s2) {
    StateNorms n;
    n.rho_u_E = weighted_sum(sup_profile(s, &EPState::rho, P), s1) +
                weighted_sum(sup_profile(s, &EPState::u, P), s1) +
                weighted_sum(sup_profile(s, &EPState::E, P), s1);
    n.theta = weighted_sum(sup_profile(s, &EPState::theta, P), s2);
    return n;
}

}  // namespace

StateNorms state_sup_norms(const StateSeries& s, const DyadicPartition& P, double s_rho_u_E,
                           double s_theta) {
    return norms_from(s, P, s_rho_u_E, s_theta);
}

StateNorms delta_sup_norms(const StateSeries& a, const StateSeries& b, const DyadicPartition& P,
                           double s_rho_u_E, double s_theta) {
    if (a.times.size() != b.times.size())
        throw InvalidInput("delta metric: snapshot grids differ");
    StateSeries diff;
    diff.times = a.times;
    diff.states.reserve(a.states.size());
    for (std::size_t j = 0; j < a.states.size(); ++j) {
        EPState d = a.states[j];
        d -= b.states[j];
        diff.states.push_back(std::move(d));
    }
    return norms_from(diff, P, s_rho_u_E, s_theta);
}

std::vector<double> IterationTrace::contraction_ratios() const {
    std::vector<double> r;
    for (std::size_t i = 1; i < delta_history.size(); ++i)
        r.push_back(delta_history[i] / std::max(delta_history[i - 1], 1e-300));
    return r;
}

IterationTrace run_iteration(const EPState& data0, const PhysicalParams& pp,
                             const TimeStepper& ts, int max_m, double tol,
                             const DyadicPartition& P, const PicardOptions& opts) {
    const Grid& g = data0.grid();
    const double sigma = sigma_index(g);
    TimeStepper local = ts;

    for (int attempt = 0; attempt <= opts.halving_retries; ++attempt) {
        IterationTrace trace;
        trace.attempts = attempt + 1;
        trace.final_T = local.t_end;
        StateSeries zero = zero_series(g, local);
        const StateSeries* prev = &zero;  // deque ends stay reference-stable
        int growth = 0;
        bool diverged = false;

        for (int m = 0; m < max_m; ++m) {
            StateSeries next;
            try {
                next = picard_step(*prev, data0, m, pp, local, P);
            } catch (const Divergence&) {
                diverged = true;
                break;
            } catch (const CflViolation&) {
                // Growth of the iterates pushed the advective speed past the
                // stability bound; from the zero iterate it is a plain
                // configuration problem.
                if (m == 0) throw;
                diverged = true;
                break;
            }
            const double uniform = state_sup_norms(next, P, sigma, sigma + 1.0).total();
            const double delta = delta_sup_norms(next, *prev, P, sigma - 1.0, sigma).total();
            trace.uniform_bound_history.push_back(uniform);
            trace.delta_history.push_back(delta);
            trace.m_last = m + 1;

            trace.iterates.push_back(std::move(next));
            while (static_cast<int>(trace.iterates.size()) > std::max(1, opts.retain_cap))
                trace.iterates.pop_front();
            prev = &trace.iterates.back();

            if (trace.delta_history.size() >= 2) {
                const auto& d = trace.delta_history;
                growth = d[d.size() - 1] > d[d.size() - 2] ? growth + 1 : 0;
                if (growth >= opts.growth_streak) {
                    diverged = true;
                    break;
                }
            }
            if (delta < tol) {
                trace.converged = true;
                break;
            }
        }

        if (!diverged) {
            if (trace.delta_history.empty()) {
                trace.verdict = "no iterations";
            } else {
                trace.verdict = "contraction";
                trace.converged = trace.converged || trace.delta_history.back() < tol;
            }
            if (!trace.iterates.empty())
                trace.constraint_residuals = check_poisson_constraint(trace.final_series(), pp);
            return trace;
        }
        if (attempt == opts.halving_retries) {
            trace.verdict = "nonconvergent";
            return trace;
        }
        local.t_end *= 0.5;
    }
    throw Error("run_iteration: unreachable");
}

std::vector<double> check_poisson_constraint(const StateSeries& s, const PhysicalParams& pp,
                                             double eps) {
    std::vector<double> out;
    out.reserve(s.states.size());
    for (const auto& st : s.states) {
        RealField ref = inverse_laplacian_gradient(compose_h2(st.rho, pp.n_bar));
        RealField diff = st.E;
        diff -= ref;
        out.push_back(l2_norm(diff) / std::max(l2_norm(st.E), eps));
    }
    return out;
}

std::vector<double> mass_history(const StateSeries& s, const PhysicalParams& pp) {
    std::vector<double> out;
    out.reserve(s.states.size());
    for (const auto& st : s.states) {
        double acc = 0.0;
        for (double r : st.rho.component(0)) acc += pp.n_bar * std::exp(r);
        out.push_back(acc / static_cast<double>(st.rho.points()) * st.grid().volume());
    }
    return out;
}

double EquationResiduals::max_transformed() const {
    double m = 0.0;
    for (const auto* v : {&rho, &u, &theta, &E})
        for (double x : *v) m = std::max(m, x);
    return m;
}

EquationResiduals residual_check(const StateSeries& s, const PhysicalParams& pp,
                                 const std::optional<StateForcing>& forcing) {
    if (s.states.size() < 3) throw InvalidInput("residual_check: need at least 3 snapshots");
    const Grid& g = s.states.front().grid();
    const double gm1 = pp.gamma - 1.0;
    EquationResiduals R;
    for (std::size_t j = 1; j + 1 < s.states.size(); ++j) {
        const EPState& a = s.states[j - 1];
        const EPState& b = s.states[j];
        const EPState& c = s.states[j + 1];
        const double two_dt = s.times[j + 1] - s.times[j - 1];
        const double t = s.times[j];
        R.times.push_back(t);

        auto ddt = [&](const RealField EPState::* mem) {
            RealField d = c.*mem;
            d -= a.*mem;
            d *= 1.0 / two_dt;
            return d;
        };

        RealField grad_rho = gradient(b.rho);
        RealField grad_theta = gradient(b.theta);
        RealField div_u = divergence(b.u);
        RealField lap_theta = laplacian(b.theta);

        // d_t rho + u.grad(rho) + div u
        RealField r_rho = ddt(&EPState::rho);
        r_rho += advect(b.u, b.rho);
        r_rho += div_u;
        if (forcing) r_rho -= forcing->f_rho.at(t);
        R.rho.push_back(l2_norm(r_rho));

        // d_t u + T_L grad(rho) + (u.grad)u + grad(theta) + theta grad(rho) - E + u
        RealField r_u = ddt(&EPState::u);
        r_u.axpy(pp.T_L, grad_rho);
        r_u += advect(b.u, b.u);
        r_u += grad_theta;
        r_u += multiply_dealiased(b.theta, grad_rho);
        r_u -= b.E;
        r_u += b.u;
        if (forcing) r_u -= forcing->f_u.at(t);
        R.u.push_back(l2_norm(r_u));

        // d_t theta - kt lap(theta) + u.grad(theta) - h1(rho) lap(theta)
        //   + (gamma-1)(T_L+theta) div u - (gamma-1)/2 |u|^2 + theta
        RealField r_th = ddt(&EPState::theta);
        r_th.axpy(-pp.kappa_tilde(), lap_theta);
        r_th += advect(b.u, b.theta);
        r_th -= multiply_dealiased(compose_h1(b.rho, pp.gamma, pp.kappa, pp.n_bar), lap_theta);
        {
            RealField tl_theta = b.theta;
            for (auto& v : tl_theta.component(0)) v += pp.T_L;
            r_th.axpy(gm1, multiply_dealiased(tl_theta, div_u));
        }
        {
            RealField usq(g, 1);
            auto dst = usq.component(0);
            for (int d = 0; d < g.dim(); ++d) {
                auto ud = b.u.component(d);
                for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += ud[i] * ud[i];
            }
            r_th.axpy(-0.5 * gm1, dealias(usq));
        }
        r_th += b.theta;
        if (forcing) r_th -= forcing->f_theta.at(t);
        R.theta.push_back(l2_norm(r_th));

        // d_t E + grad(Delta^{-1} div)(h2(rho) u + n_bar u)
        RealField flux = multiply_dealiased(compose_h2(b.rho, pp.n_bar), b.u);
        flux.axpy(pp.n_bar, b.u);
        RealField r_E = ddt(&EPState::E);
        r_E += leray_type_projection(flux);
        if (forcing) r_E -= forcing->f_E.at(t);
        R.E.push_back(l2_norm(r_E));

        // Back-converted balance laws in (n, u, T, E).
        PhysicalFields pa = from_transformed(a, pp);
        PhysicalFields pb = from_transformed(b, pp);
        PhysicalFields pc = from_transformed(c, pp);

        RealField dn = pc.n;
        dn -= pa.n;
        dn *= 1.0 / two_dt;
        RealField r_mass = dn + divergence(multiply_dealiased(pb.n, pb.u));
        R.mass.push_back(l2_norm(r_mass));

        RealField du = ddt(&EPState::u);
        RealField r_mom = multiply_dealiased(pb.n, du);
        r_mom += multiply_dealiased(pb.n, advect(pb.u, pb.u));
        r_mom += gradient(multiply_dealiased(pb.n, pb.T));
        r_mom -= multiply_dealiased(pb.n, pb.E);
        r_mom += multiply_dealiased(pb.n, pb.u);
        R.momentum.push_back(l2_norm(r_mom));

        RealField dT = pc.T;
        dT -= pa.T;
        dT *= 1.0 / two_dt;
        RealField r_T = multiply_dealiased(pb.n, dT);
        r_T += multiply_dealiased(pb.n, advect(pb.u, pb.T));
        r_T.axpy(gm1, multiply_dealiased(multiply_dealiased(pb.n, pb.T), divergence(pb.u)));
        r_T.axpy(-gm1 * pp.kappa, laplacian(pb.T));
        {
            RealField usq(g, 1);
            auto dst = usq.component(0);
            for (int d = 0; d < g.dim(); ++d) {
                auto ud = pb.u.component(d);
                for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += ud[i] * ud[i];
            }
            r_T.axpy(-0.5 * gm1, multiply_dealiased(pb.n, dealias(usq)));
        }
        {
            RealField relax = pb.T;
            for (auto& v : relax.component(0)) v -= pp.T_L;
            r_T += multiply_dealiased(pb.n, relax);
        }
        R.temperature.push_back(l2_norm(r_T));

        RealField r_pois = divergence(b.E);
        auto rp = r_pois.component(0);
        auto nb = pb.n.component(0);
        for (std::size_t i = 0; i < rp.size(); ++i) rp[i] -= nb[i] - pp.n_bar;
        // The projection annihilates means; compare on the mean-free part.
        const double mz = mean(r_pois);
        for (auto& v : rp) v -= mz;
        R.poisson.push_back(l2_norm(r_pois));
    }
    return R;
}

double fixed_point_residual(const IterationTrace& trace, const EPState& data0,
                            const PhysicalParams& pp, const TimeStepper& ts,
                            const DyadicPartition& P) {
    TimeStepper local = ts;
    local.t_end = trace.final_T;
    const StateSeries& fixed = trace.final_series();
    StateSeries again = picard_step(fixed, data0, trace.m_last, pp, local, P);
    const double sigma = sigma_index(data0.grid());
    return delta_sup_norms(again, fixed, P, sigma - 1.0, sigma).total();
}

UniquenessReport uniqueness_experiment(const EPState& data0, double perturbation_size,
                                       const PhysicalParams& pp, const TimeStepper& ts,
                                       const DyadicPartition& P, const PicardOptions& opts,
                                       int max_m, double tol) {
    IterationTrace base = run_iteration(data0, pp, ts, max_m, tol, P, opts);
    if (base.verdict == "nonconvergent")
        throw Divergence("uniqueness experiment: base run nonconvergent", base.m_last, 0.0);

    EPState perturbed = data0;
    if (perturbation_size != 0.0) {
        // Fixed-shape smooth bump; the electric field is rebuilt so the
        // elliptic constraint holds at t = 0 for the perturbed data too.
        RealField shape = random_bandlimited_field(data0.grid(), -2.0, 0xEF17u);
        shape *= 1.0 / std::max(shape.max_abs(), 1e-300);
        perturbed.rho.axpy(perturbation_size, shape);
        perturbed.E = inverse_laplacian_gradient(compose_h2(perturbed.rho, pp.n_bar));
    }
    IterationTrace other = run_iteration(perturbed, pp, ts, max_m, tol, P, opts);
    if (other.verdict == "nonconvergent")
        throw Divergence("uniqueness experiment: perturbed run nonconvergent", other.m_last, 0.0);
    if (other.final_T != base.final_T)
        throw Divergence("uniqueness experiment: runs settled on different horizons",
                         other.m_last, other.final_T);

    const StateSeries& s1 = base.final_series();
    const StateSeries& s2 = other.final_series();
    const double sigma = sigma_index(data0.grid());

    UniquenessReport rep;
    rep.perturbation_size = perturbation_size;
    // sup-in-time group metric + time-integrated theta metric
    StateNorms sup = delta_sup_norms(s1, s2, P, sigma - 1.0, sigma);
    StateSeries diff;
    diff.times = s1.times;
    for (std::size_t j = 0; j < s1.states.size(); ++j) {
        EPState d = s1.states[j];
        d -= s2.states[j];
        diff.states.push_back(std::move(d));
    }
    const double theta_l1 =
        chemin_lerner_norm(diff.component_series(&EPState::theta), {sigma, 2.0, 1.0}, 1.0, P);
    rep.error_metric = sup.rho_u_E + theta_l1;

    StateSeries last;
    last.times = {0.0};
    EPState d = s1.states.back();
    d -= s2.states.back();
    last.states.push_back(std::move(d));
    rep.final_time_error = state_sup_norms(last, P, sigma - 1.0, sigma).total();
    return rep;
}

}  // namespace eplab

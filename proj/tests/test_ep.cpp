// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eplab/experiments.hpp"
#include "eplab/random_fields.hpp"

using namespace eplab;

namespace {

PhysicalParams small_params(double t_end) {
    PhysicalParams pp;
    pp.gamma = 5.0 / 3.0;
    pp.kappa = (1.0 + t_end) / t_end * pp.n_bar / (pp.gamma - 1.0);
    return pp;
}

// Shared converged small-data run on a modest grid.
struct SmallRun {
    Grid grid{2, 64, kTwoPi};
    DyadicPartition P{grid};
    PhysicalParams pp = small_params(0.1);
    TimeStepper ts{2e-3, Scheme::rk4_explicit, 0.1, 1};
    EPState data0;
    IterationTrace trace;

    SmallRun() {
        InitialDataFamily fam{DataFamily::gaussian_bump, 1e-2, 1};
        data0 = generate_initial_data(fam, grid, pp, P);
        PicardOptions opts;
        opts.retain_cap = 3;
        trace = run_iteration(data0, pp, ts, 7, 1e-13, P, opts);
    }
};

const SmallRun& small_run() {
    static SmallRun r;
    return r;
}

}  // namespace

TEST_CASE("variable change: equilibrium, log scaling, round trip, vacuum") {
    Grid g(2, 32, kTwoPi);
    PhysicalParams pp = small_params(0.1);

    EPState eq = to_transformed(RealField(g, 1, pp.n_bar), RealField(g, 2),
                                RealField(g, 1, pp.T_L), pp);
    CHECK(eq.rho.max_abs() < 1e-14);
    CHECK(eq.theta.max_abs() < 1e-14);
    CHECK(eq.E.max_abs() < 1e-12);

    EPState e1 = to_transformed(RealField(g, 1, pp.n_bar * std::exp(1.0)), RealField(g, 2),
                                RealField(g, 1, pp.T_L), pp);
    CHECK(e1.rho.at(0, 5) == doctest::Approx(1.0).epsilon(1e-13));

    RealField n(g, 1);
    {
        RealField bump = smooth_bump(g, {0.5, 0.5, 0.5}, 1.0 / 6.0);
        auto nd = n.component(0);
        auto bd = bump.component(0);
        for (std::size_t i = 0; i < nd.size(); ++i) nd[i] = pp.n_bar * (1.0 + 0.3 * bd[i]);
    }
    RealField u = random_bandlimited_field(g, -2.0, 3, 2);
    RealField T(g, 1, pp.T_L);
    T.axpy(0.05, smooth_bump(g, {0.4, 0.6, 0.5}, 1.0 / 7.0));
    EPState s = to_transformed(n, u, T, pp);
    PhysicalFields back = from_transformed(s, pp);
    RealField dn = back.n - n;
    RealField dT = back.T - T;
    CHECK(dn.max_abs() < 1e-12 * n.max_abs());
    CHECK(dT.max_abs() < 1e-12 * T.max_abs());
    // potential solves the charge equation: lap(Phi) = n - n_bar (mean-free)
    RealField lap_phi = laplacian(back.Phi);
    RealField rhs = n;
    for (auto& v : rhs.component(0)) v -= pp.n_bar;
    const double mz = mean(rhs);
    for (auto& v : rhs.component(0)) v -= mz;
    RealField pois = lap_phi - rhs;
    CHECK(pois.max_abs() < 1e-11);

    RealField vac(g, 1, 1.0);
    vac.at(0, 10) = 0.0;
    CHECK_THROWS_AS(to_transformed(vac, u, T, pp), InvalidInput);
}

TEST_CASE("initial-data cutoff: saturation, two-block start, geometric tail") {
    Grid g(2, 128, kTwoPi);
    DyadicPartition P(g);
    PhysicalParams pp = small_params(0.1);
    EPState data = generate_initial_data({DataFamily::random_bandlimited, 0.1, 7}, g, pp, P);

    EPState same = mollify_initial(data, P.q_max() + 1, P);
    RealField d = same.rho - data.rho;
    CHECK(d.max_abs() < 1e-12 * data.rho.max_abs());

    EPState low = mollify_initial(data, 0, P);
    RealField two_blocks = delta_q(data.rho, -1, P) + delta_q(data.rho, 0, P);
    RealField d0 = low.rho - two_blocks;
    CHECK(d0.max_abs() < 1e-12 * std::max(data.rho.max_abs(), 1e-300));

    const double sigma = sigma_index(g);
    const double denom = besov_norm(data.rho, {sigma, 2.0, 1.0}, P).value;
    for (int m = 0; m < P.q_max(); ++m) {
        RealField tail = s_q(data.rho, m + 1, P) - data.rho;
        const double cm =
            std::ldexp(1.0, m) * besov_norm(tail, {sigma - 1.0, 2.0, 1.0}, P).value / denom;
        CHECK(cm <= 0.5 * (1.0 + 1e-9));
    }
    CHECK_THROWS_AS(mollify_initial(data, -1, P), InvalidInput);
}

TEST_CASE("equilibrium is an exact fixed point of the sweep") {
    Grid g(2, 32, kTwoPi);
    DyadicPartition P(g);
    PhysicalParams pp = small_params(0.05);
    TimeStepper ts{5e-3, Scheme::rk4_explicit, 0.05, 1};
    EPState zero = zero_state(g);
    StateSeries prev = zero_series(g, ts);
    for (int m = 0; m < 2; ++m) {
        StateSeries next = picard_step(prev, zero, m, pp, ts, P);
        for (const auto& st : next.states) {
            CHECK(st.rho.max_abs() == 0.0);
            CHECK(st.u.max_abs() == 0.0);
            CHECK(st.theta.max_abs() == 0.0);
            CHECK(st.E.max_abs() == 0.0);
        }
        prev = next;
    }
}

TEST_CASE("first sweep from a density tone reproduces the wave solution") {
    Grid g(2, 128, kTwoPi);
    DyadicPartition P(g);
    PhysicalParams pp = small_params(0.2);
    TimeStepper ts{2e-3, Scheme::rk4_explicit, 0.2, 1};

    const double a = 0.01;
    EPState data0 = zero_state(g);
    {
        auto d = data0.rho.component(0);
        for_each_point(g, [&](std::size_t i, double x, double, double) {
            d[i] = a * std::cos(x);
        });
    }
    data0.E = inverse_laplacian_gradient(compose_h2(data0.rho, pp.n_bar));

    StateSeries out = picard_step(zero_series(g, ts), data0, 0, pp, ts, P);

    // oracle: d_t r = -div u, d_t u = -T_L grad r from (r, u)(0) = (a cos x, 0)
    const double c = std::sqrt(pp.T_L);
    double worst_r = 0.0, worst_u = 0.0;
    for (std::size_t j = 0; j < out.states.size(); j += 20) {
        const double t = out.times[j];
        const EPState& st = out.states[j];
        for_each_point(g, [&](std::size_t i, double x, double, double) {
            const double r_exact = a * std::cos(x) * std::cos(c * t);
            const double u_exact = a * c * std::sin(x) * std::sin(c * t);
            worst_r = std::max(worst_r, std::abs(st.rho.at(0, i) - r_exact));
            worst_u = std::max(worst_u, std::abs(st.u.at(0, i) - u_exact));
        });
    }
    CHECK(worst_r < 1e-8);
    CHECK(worst_u < 1e-8);
    // theta stays zero; E stays at its cutoff initial value
    CHECK(out.states.back().theta.max_abs() < 1e-14);
    RealField dE = out.states.back().E - mollify_initial(data0, 0, P).E;
    CHECK(dE.max_abs() < 1e-13);
}

TEST_CASE("first-sweep temperature is a pure heat flow of the cutoff data") {
    Grid g(2, 64, kTwoPi);
    DyadicPartition P(g);
    PhysicalParams pp = small_params(0.1);
    TimeStepper ts{2e-3, Scheme::rk4_explicit, 0.1, 1};

    EPState data0 = zero_state(g);
    {
        auto d = data0.theta.component(0);
        for_each_point(g, [&](std::size_t i, double x, double y, double) {
            d[i] = 0.02 * std::cos(x + y) + 0.01 * std::cos(2.0 * x);
        });
    }
    StateSeries out = picard_step(zero_series(g, ts), data0, 0, pp, ts, P);
    RealField th0 = s_q(data0.theta, 1, P);
    TimeSeries heat = solve_heat(th0, pp.kappa_tilde(),
                                 TimeDependentField::constant(RealField(g, 1)), ts);
    RealField diff = out.states.back().theta - heat.fields.back();
    CHECK(diff.max_abs() < 1e-10);
}

TEST_CASE("zero data converges immediately with vanishing difference") {
    Grid g(2, 32, kTwoPi);
    DyadicPartition P(g);
    PhysicalParams pp = small_params(0.05);
    TimeStepper ts{5e-3, Scheme::rk4_explicit, 0.05, 1};
    IterationTrace trace = run_iteration(zero_state(g), pp, ts, 5, 1e-13, P, {});
    CHECK(trace.converged);
    CHECK(trace.m_last == 1);
    CHECK(trace.delta_history.front() == 0.0);
    CHECK(report_summary_text(trace).find("contraction") != std::string::npos);
}

TEST_CASE("small-data iteration contracts with bounded iterates") {
    const SmallRun& r = small_run();
    CHECK(r.trace.verdict == "contraction");
    const auto& d = r.trace.delta_history;
    REQUIRE(d.size() >= 5);
    for (std::size_t m = 2; m + 1 < d.size(); ++m) CHECK(d[m + 1] < d[m]);
    const auto& ub = r.trace.uniform_bound_history;
    for (double u : ub) CHECK(u <= 3.0 * ub.front());
    // contraction trend never worsens from m >= 2 (10% slack); individual
    // ratios oscillate around the asymptotic rate, so the running geometric
    // mean carries the slope
    auto ratios = r.trace.contraction_ratios();
    double log_acc = 0.0;
    double prev_mean = 1e300;
    for (std::size_t i = 1; i < ratios.size(); ++i) {  // ratios[i] = delta_{i+2}/delta_{i+1}
        log_acc += std::log(ratios[i]);
        const double mean = std::exp(log_acc / static_cast<double>(i));
        CHECK(mean <= prev_mean * 1.1 + 1e-12);
        prev_mean = mean;
    }
}

TEST_CASE("converged run: constraint propagation, mass, positivity, curl") {
    const SmallRun& r = small_run();
    const auto& resid = r.trace.constraint_residuals;
    REQUIRE(!resid.empty());
    CHECK(resid.front() < 1e-12);
    for (double x : resid) CHECK(x < 1e-6);

    auto mass = mass_history(r.trace.final_series(), r.pp);
    for (double m : mass) CHECK(std::abs(m - mass.front()) < 1e-8 * std::abs(mass.front()));

    for (const auto& st : r.trace.final_series().states) {
        PhysicalFields ph = from_transformed(st, r.pp);
        double n_min = 1e300;
        for (double v : ph.n.component(0)) n_min = std::min(n_min, v);
        CHECK(n_min > 0.0);
        CHECK(curl_l2_norm(st.E) < 1e-10 * std::max(l2_norm(st.E), 1e-300));
    }
}

TEST_CASE("negative control: the constraint fails away from the fixed point") {
    const SmallRun& r = small_run();
    StateSeries first = picard_step(zero_series(r.grid, r.ts), r.data0, 0, r.pp, r.ts, r.P);
    auto resid = check_poisson_constraint(first, r.pp);
    double worst = 0.0;
    for (double x : resid) worst = std::max(worst, x);
    double converged_worst = 0.0;
    for (double x : r.trace.constraint_residuals) converged_worst = std::max(converged_worst, x);
    CHECK(worst > 10.0 * converged_worst);
}

TEST_CASE("feeding the fixed point through one more sweep barely moves it") {
    const SmallRun& r = small_run();
    const double moved = fixed_point_residual(r.trace, r.data0, r.pp, r.ts, r.P);
    CHECK(moved <= 2.0 * r.trace.delta_history.back());
}

TEST_CASE("equation residuals vanish at equilibrium and reject short series") {
    Grid g(2, 32, kTwoPi);
    PhysicalParams pp = small_params(0.1);
    StateSeries eq = zero_series(g, TimeStepper{0.01, Scheme::rk4_explicit, 0.05, 1});
    EquationResiduals res = residual_check(eq, pp);
    CHECK(res.max_transformed() < 1e-12);
    for (double v : res.mass) CHECK(v < 1e-12);
    for (double v : res.poisson) CHECK(v < 1e-12);

    StateSeries two;
    two.times = {0.0, 0.01};
    two.states = {zero_state(g), zero_state(g)};
    CHECK_THROWS_AS(residual_check(two, pp), InvalidInput);
}

TEST_CASE("identical data reproduces itself through the uniqueness probe") {
    const SmallRun& r = small_run();
    PicardOptions opts;
    opts.retain_cap = 2;
    TimeStepper ts{5e-3, Scheme::rk4_explicit, 0.05, 1};
    PhysicalParams pp = small_params(0.05);
    UniquenessReport rep = uniqueness_experiment(r.data0, 0.0, pp, ts, r.P, opts, 5, 1e-12);
    CHECK(rep.error_metric == 0.0);
    CHECK(rep.final_time_error == 0.0);
}

TEST_CASE("nonconvergent setups report a horizon suggestion") {
    // Huge data on a short budget with retries disabled: the monitor should
    // give up rather than loop.
    Grid g(2, 32, kTwoPi);
    DyadicPartition P(g);
    PhysicalParams pp = small_params(2.0);
    pp.kappa = 0.05;  // weak diffusion
    TimeStepper ts{0.02, Scheme::rk4_explicit, 2.0, 1};
    EPState data0 = generate_initial_data({DataFamily::random_bandlimited, 0.6, 3}, g, pp, P);
    PicardOptions opts;
    opts.halving_retries = 0;
    IterationTrace trace = run_iteration(data0, pp, ts, 10, 1e-13, P, opts);
    if (trace.verdict == "nonconvergent") {
        CHECK(report_summary_text(trace).find("halving") != std::string::npos);
    } else {
        // with retries enabled the same setup must land on a shorter horizon
        PicardOptions retry;
        retry.halving_retries = 4;
        IterationTrace t2 = run_iteration(data0, pp, ts, 10, 1e-13, P, retry);
        CHECK(t2.final_T <= ts.t_end);
    }
}

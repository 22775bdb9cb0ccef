// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <deque>
#include <optional>

#include "eplab/ep_system.hpp"
#include "eplab/solvers.hpp"

namespace eplab {

/// One linearized sweep: given iterate m as a snapshot series, produce
/// iterate m+1 by solving
///   - the coupled (rho, u) transport-acoustic system (one RK4, sources
///     frozen at iterate m),
///   - the heat equation for theta (exact diffusion factor, forcing from
///     iterate m),
///   - the E evolution driven by the projected mass flux of iterate m,
/// starting from the low-frequency cutoff S_{m+1} of the initial data.
/// Inter-snapshot coefficients are linearly interpolated (solver contract).
StateSeries picard_step(const StateSeries& prev, const EPState& data0, int m,
                        const PhysicalParams& pp, const TimeStepper& ts,
                        const DyadicPartition& P);

/// Iterate-norm pair used by the monitors: the (rho,u,E)-group at one
/// regularity and theta one derivative higher, each a sup-in-time
/// per-block norm over the snapshot series.
struct StateNorms {
    double rho_u_E = 0.0;
    double theta = 0.0;
    double total() const { return rho_u_E + theta; }
};

StateNorms state_sup_norms(const StateSeries& s, const DyadicPartition& P, double s_rho_u_E,
                           double s_theta);
StateNorms delta_sup_norms(const StateSeries& a, const StateSeries& b, const DyadicPartition& P,
                           double s_rho_u_E, double s_theta);

struct PicardOptions {
    int retain_cap = 12;      // full series kept for at most this many iterates
    int halving_retries = 4;  // automatic T halvings on contraction failure
    int growth_streak = 3;    // consecutive delta growth declaring divergence
};

struct IterationTrace {
    std::deque<StateSeries> iterates;          // retained tail, final last
    std::vector<double> uniform_bound_history; // index m-1 holds iterate m
    std::vector<double> delta_history;         // delta_m for m = 1..
    std::vector<double> constraint_residuals;  // final series, per snapshot
    bool converged = false;
    int attempts = 1;
    double final_T = 0.0;
    int m_last = 0;
    std::string verdict;  // "contraction" | "nonconvergent" | "no iterations"

    const StateSeries& final_series() const { return iterates.back(); }
    std::vector<double> contraction_ratios() const;
};

/// Drive picard_step until the successive-difference norm falls below tol or
/// max_m sweeps are done; on a divergence signal (growth_streak consecutive
/// increases of delta, or a blow-up) halve T and retry, up to
/// opts.halving_retries times.
IterationTrace run_iteration(const EPState& data0, const PhysicalParams& pp,
                             const TimeStepper& ts, int max_m, double tol,
                             const DyadicPartition& P, const PicardOptions& opts = {});

/// Per-snapshot ||E - grad(Delta^{-1})(n_bar e^rho - n_bar)||_{L2} relative
/// to max(||E||_{L2}, eps).
std::vector<double> check_poisson_constraint(const StateSeries& s, const PhysicalParams& pp,
                                             double eps = 1e-30);

/// Total mass integral per snapshot.
std::vector<double> mass_history(const StateSeries& s, const PhysicalParams& pp);

/// Manufactured source terms for the transformed system.
struct StateForcing {
    TimeDependentField f_rho;
    TimeDependentField f_u;
    TimeDependentField f_theta;
    TimeDependentField f_E;
};

struct EquationResiduals {
    std::vector<double> times;  // interior snapshot times
    // transformed system, per equation, L2 at each interior snapshot
    std::vector<double> rho, u, theta, E;
    // back-converted physical system
    std::vector<double> mass, momentum, temperature, poisson;

    double max_transformed() const;
};

/// Central-difference time derivative + spectral space terms at interior
/// snapshots, optionally against manufactured forcing.
EquationResiduals residual_check(const StateSeries& s, const PhysicalParams& pp,
                                 const std::optional<StateForcing>& forcing = std::nullopt);

/// Feed a converged series once more through picard_step and measure the
/// change in the successive-difference metric.
double fixed_point_residual(const IterationTrace& trace, const EPState& data0,
                            const PhysicalParams& pp, const TimeStepper& ts,
                            const DyadicPartition& P);

struct UniquenessReport {
    double perturbation_size = 0.0;
    double error_metric = 0.0;      // sup-in-time difference metric
    double final_time_error = 0.0;  // same metric at the final snapshot only
};

/// Converge from data0 and from data0 with a fixed-shape rho perturbation
/// (E0 rebuilt consistently); report the trajectory separation. Throws
/// Divergence if either run fails to contract.
UniquenessReport uniqueness_experiment(const EPState& data0, double perturbation_size,
                                       const PhysicalParams& pp, const TimeStepper& ts,
                                       const DyadicPartition& P, const PicardOptions& opts = {},
                                       int max_m = 12, double tol = 1e-11);

}  // namespace eplab

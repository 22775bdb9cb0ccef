// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "eplab/bony.hpp"
#include "eplab/steppers.hpp"

namespace eplab {

/// Physical coefficients. The relaxation times and the Debye length are
/// fixed to one; kappa_tilde = (gamma - 1) kappa / n_bar drives the heat
/// operator.
struct PhysicalParams {
    double gamma = 5.0 / 3.0;  // adiabatic exponent, > 1
    double kappa = 1.0;        // heat conductivity, > 0
    double n_bar = 1.0;        // background (doping) density, > 0
    double T_L = 1.0;          // lattice temperature, > 0
    double tau_p = 1.0;
    double tau_w = 1.0;
    double lambda = 1.0;

    void validate() const {
        if (!(gamma > 1.0)) throw ConfigError("params: gamma must exceed 1");
        for (double v : {kappa, n_bar, T_L, tau_p, tau_w, lambda})
            if (!(v > 0.0)) throw ConfigError("params: coefficients must be positive");
        if (tau_p != 1.0 || tau_w != 1.0 || lambda != 1.0)
            throw ConfigError("params: relaxation times and Debye length are fixed to 1");
    }
    double kappa_tilde() const { return (gamma - 1.0) * kappa / n_bar; }
};

/// State in the transformed variables (rho, u, theta, E) =
/// (ln n - ln n_bar, u, T - T_L, grad Phi). The density n = n_bar exp(rho)
/// is positive by construction.
struct EPState {
    RealField rho;
    RealField u;
    RealField theta;
    RealField E;
    double time = 0.0;

    const Grid& grid() const { return rho.grid(); }

    EPState& operator+=(const EPState& o) {
        rho += o.rho; u += o.u; theta += o.theta; E += o.E;
        return *this;
    }
    EPState& operator-=(const EPState& o) {
        rho -= o.rho; u -= o.u; theta -= o.theta; E -= o.E;
        return *this;
    }
    EPState& operator*=(double a) {
        rho *= a; u *= a; theta *= a; E *= a;
        return *this;
    }
    bool all_finite() const {
        return rho.all_finite() && u.all_finite() && theta.all_finite() && E.all_finite();
    }
};

EPState zero_state(const Grid& g);

/// (n, u, T) -> (rho, u, theta, E) with E recovered from the charge
/// imbalance through grad(Delta^{-1}). Rejects vacuum (n <= 0 anywhere).
EPState to_transformed(const RealField& n, const RealField& u, const RealField& T,
                       const PhysicalParams& pp);

struct PhysicalFields {
    RealField n;
    RealField u;
    RealField T;
    RealField Phi;  // zero-mean potential
    RealField E;
};

PhysicalFields from_transformed(const EPState& s, const PhysicalParams& pp);

/// Low-frequency cutoff S_{m+1} applied to every component.
EPState mollify_initial(const EPState& data0, int m, const DyadicPartition& P);

/// Snapshots of a state trajectory on a shared time grid.
struct StateSeries {
    std::vector<double> times;
    std::vector<EPState> states;

    TimeSeries component_series(const RealField EPState::* member) const {
        TimeSeries ts;
        ts.times = times;
        ts.fields.reserve(states.size());
        for (const auto& s : states) ts.fields.push_back(s.*member);
        return ts;
    }
};

StateSeries zero_series(const Grid& g, const TimeStepper& ts);

/// Relative curl size of the E component (exact gradients give ~0).
double curl_residual(const RealField& E);

}  // namespace eplab

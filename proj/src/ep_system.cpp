// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eplab/ep_system.hpp"

#include <cmath>

namespace eplab {

EPState zero_state(const Grid& g) {
    return {RealField(g, 1), RealField(g, g.dim()), RealField(g, 1), RealField(g, g.dim()), 0.0};
}

EPState to_transformed(const RealField& n, const RealField& u, const RealField& T,
                       const PhysicalParams& pp) {
    pp.validate();
    const Grid& g = n.grid();
    EPState s = zero_state(g);
    auto ns = n.component(0);
    for (double v : ns)
        if (!(v > 0.0)) throw InvalidInput("to_transformed: vacuum (n <= 0) rejected");
    const double ln_nbar = std::log(pp.n_bar);
    auto rs = s.rho.component(0);
    for (std::size_t i = 0; i < ns.size(); ++i) rs[i] = std::log(ns[i]) - ln_nbar;
    s.u = u;
    s.theta = T;
    for (auto& v : s.theta.component(0)) v -= pp.T_L;
    // Charge imbalance n - n_bar drives E = grad(Delta^{-1}(n - n_bar)).
    RealField imbalance = n;
    for (auto& v : imbalance.component(0)) v -= pp.n_bar;
    s.E = inverse_laplacian_gradient(imbalance);
    return s;
}

PhysicalFields from_transformed(const EPState& s, const PhysicalParams& pp) {
    pp.validate();
    PhysicalFields out{RealField(s.grid(), 1), s.u, RealField(s.grid(), 1), RealField(s.grid(), 1),
                       s.E};
    auto rs = s.rho.component(0);
    auto ns = out.n.component(0);
    for (std::size_t i = 0; i < rs.size(); ++i) ns[i] = pp.n_bar * std::exp(rs[i]);
    auto ths = s.theta.component(0);
    auto Ts = out.T.component(0);
    for (std::size_t i = 0; i < ths.size(); ++i) Ts[i] = ths[i] + pp.T_L;
    RealField imbalance = out.n;
    for (auto& v : imbalance.component(0)) v -= pp.n_bar;
    out.Phi = inverse_laplacian(imbalance);
    return out;
}

EPState mollify_initial(const EPState& data0, int m, const DyadicPartition& P) {
    if (m < 0) throw InvalidInput("mollify_initial: m must be >= 0");
    EPState s = data0;
    s.rho = s_q(data0.rho, m + 1, P);
    s.u = s_q(data0.u, m + 1, P);
    s.theta = s_q(data0.theta, m + 1, P);
    s.E = s_q(data0.E, m + 1, P);
    return s;
}

StateSeries zero_series(const Grid& g, const TimeStepper& ts) {
    StateSeries out;
    const int n = ts.n_steps();
    const double dt = ts.effective_dt();
    out.times.reserve(n + 1);
    out.states.reserve(n + 1);
    for (int j = 0; j <= n; ++j) {
        out.times.push_back(j * dt);
        EPState s = zero_state(g);
        s.time = j * dt;
        out.states.push_back(std::move(s));
    }
    return out;
}

double curl_residual(const RealField& E) {
    const double denom = std::max(l2_norm(E), 1e-300);
    return curl_l2_norm(E) / denom;
}

}  // namespace eplab

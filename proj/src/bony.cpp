// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eplab/bony.hpp"

#include <cmath>

namespace eplab {

RealField paraproduct(const RealField& f, const RealField& g, const DyadicPartition& P) {
    if (!(f.grid() == g.grid())) throw InvalidInput("paraproduct: grid mismatch");
    SpectralField F = fft_forward(f);
    SpectralField G = fft_forward(g);
    RealField out(f.grid(), g.components());
    for (int q = 1; q <= P.q_max(); ++q) {
        RealField low = detail::fft_inverse_real(s_q(F, q - 1, P));
        RealField block = detail::fft_inverse_real(delta_q(G, q, P));
        out += multiply_dealiased(low, block);
    }
    return out;
}

RealField remainder(const RealField& f, const RealField& g, const DyadicPartition& P) {
    if (!(f.grid() == g.grid())) throw InvalidInput("remainder: grid mismatch");
    SpectralField F = fft_forward(f);
    SpectralField G = fft_forward(g);
    RealField out(f.grid(), g.components());
    for (int q = -1; q <= P.q_max(); ++q) {
        RealField fq = detail::fft_inverse_real(delta_q(F, q, P));
        SpectralField near(g.grid(), g.components());
        for (int p = q - 1; p <= q + 1; ++p) {
            if (p < -1 || p > P.q_max()) continue;
            near += delta_q(G, p, P);
        }
        out += multiply_dealiased(fq, detail::fft_inverse_real(near));
    }
    return out;
}

BonySplit bony_split(const RealField& f, const RealField& g, const DyadicPartition& P) {
    return {paraproduct(f, g, P), paraproduct(g, f, P), remainder(f, g, P)};
}

void InequalityReport::add_ratio(double r) {
    ratios.push_back(r);
    sup_ratio = std::max(sup_ratio, r);
    ++ensemble_size;
}

void InequalityReport::absorb_cq(const std::vector<double>& cq) {
    if (per_q_cq.size() < cq.size()) per_q_cq.resize(cq.size(), 0.0);
    double s = 0.0;
    for (std::size_t i = 0; i < cq.size(); ++i) {
        per_q_cq[i] = std::max(per_q_cq[i], cq[i]);
        s += cq[i];
    }
    cq_l1_sum = std::max(cq_l1_sum, s);
}

nlohmann::json InequalityReport::to_json() const {
    nlohmann::json j{{"name", name},
                     {"ensemble_size", ensemble_size},
                     {"ratios", ratios},
                     {"sup_ratio", sup_ratio}};
    if (!per_q_cq.empty()) {
        j["per_q_cq"] = per_q_cq;
        j["cq_l1_sum"] = cq_l1_sum;
    }
    if (!extras.empty()) j["extras"] = extras;
    return j;
}

InequalityReport commutator_check(const RealField& f, const RealField& g, CommutatorOp op,
                                  const CommutatorCase& cc, const DyadicPartition& P) {
    const Grid& grid = f.grid();
    if (op == CommutatorOp::gradient) {
        if (f.components() != grid.dim() || g.components() != 1)
            throw InvalidInput("commutator grad case expects vector f, scalar g");
    } else {
        if (f.components() != 1 || g.components() != grid.dim())
            throw InvalidInput("commutator div case expects scalar f, vector g");
    }
    if (cc.index < 0 || cc.index > 2) throw InvalidInput("unsupported commutator case");

    const double s = cc.s(grid);
    RealField Ag = op == CommutatorOp::gradient ? gradient(g) : divergence(g);
    SpectralField Agh = fft_forward(Ag);
    // f . A g contracted over components (dot product for the grad case).
    RealField fAg(grid, 1);
    {
        auto dst = fAg.component(0);
        for (int c = 0; c < Ag.components(); ++c) {
            auto fc = f.component(f.components() == 1 ? 0 : c);
            auto ac = Ag.component(c);
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += fc[i] * ac[i];
        }
        fAg = dealias(fAg);
    }
    SpectralField fAgh = fft_forward(fAg);

    const double fn = besov_norm(f, {s + cc.f_extra(), 2.0, 1.0}, P).value;
    const double gn = besov_norm(g, {s + cc.g_extra(), 2.0, 1.0}, P).value;
    const double rhs = std::max(fn * gn, 1e-300);

    InequalityReport rep;
    rep.name = "commutator";
    std::vector<double> cq(P.q_max() + 2, 0.0);
    for (int q = -1; q <= P.q_max(); ++q) {
        RealField block_Ag = detail::fft_inverse_real(delta_q(Agh, q, P));
        // f * Delta_q(A g), contracted.
        RealField t1(grid, 1);
        auto dst = t1.component(0);
        for (int c = 0; c < block_Ag.components(); ++c) {
            auto fc = f.component(f.components() == 1 ? 0 : c);
            auto bc = block_Ag.component(c);
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += fc[i] * bc[i];
        }
        t1 = dealias(t1);
        RealField comm = t1 - detail::fft_inverse_real(delta_q(fAgh, q, P));
        cq[q + 1] = std::pow(2.0, q * s) * l2_norm(comm) / rhs;
    }
    rep.absorb_cq(cq);
    rep.add_ratio(rep.cq_l1_sum);
    return rep;
}

InequalityReport moser_check_classical(const RealField& f, const RealField& g,
                                       const BesovParams& bp, const DyadicPartition& P) {
    if (!(bp.s > 0.0)) throw InvalidInput("moser_check_classical: s > 0 required");
    RealField fg = multiply_dealiased(f, g);
    const double lhs = besov_norm(fg, bp, P).value;
    const double rhs = lp_norm(f, kInf) * besov_norm(g, bp, P).value +
                       lp_norm(g, kInf) * besov_norm(f, bp, P).value;
    InequalityReport rep;
    rep.name = "moser_classical";
    rep.add_ratio(lhs / std::max(rhs, 1e-300));
    return rep;
}

namespace {

void require_supported_exponent(double p) {
    if (p != 1.0 && p != 2.0 && p != kInf)
        throw ConfigError("supported integrability exponents are {1, 2, inf}");
}

double inv(double p) { return p == kInf ? 0.0 : 1.0 / p; }

}  // namespace

InequalityReport moser_check_generalized(const RealField& f, const RealField& g, double s,
                                         double p, double p1, double p2, double p3, double p4,
                                         double r, const DyadicPartition& P) {
    for (double e : {p, p1, p2, p3, p4}) require_supported_exponent(e);
    if (std::abs(inv(p) - inv(p1) - inv(p2)) > 1e-12 ||
        std::abs(inv(p) - inv(p3) - inv(p4)) > 1e-12)
        throw ConfigError("exponent relation 1/p = 1/p1+1/p2 = 1/p3+1/p4 violated");
    if (s < 0.0) throw ConfigError("moser_check_generalized: s >= 0 required");

    BonySplit split = bony_split(f, g, P);
    RealField fg = multiply_dealiased(f, g);

    const double term1 = lp_norm(f, p1) * besov_norm(g, {s, p2, r}, P).value;
    const double term2 = lp_norm(g, p3) * besov_norm(f, {s, p4, r}, P).value;
    const double lhs = besov_norm(fg, {s, p, r}, P).value;

    InequalityReport rep;
    rep.name = "moser_generalized";
    rep.add_ratio(lhs / std::max(term1 + term2, 1e-300));
    rep.extras["paraproduct_ratio"] =
        besov_norm(split.T_fg, {s, p, r}, P).value / std::max(term1, 1e-300);
    rep.extras["symmetric_ratio"] =
        besov_norm(split.T_gf, {s, p, r}, P).value / std::max(term2, 1e-300);
    rep.extras["remainder_ratio"] =
        besov_norm(split.R_fg, {s, p, r}, P).value / std::max(term1, 1e-300);
    return rep;
}

namespace {

RealField compose_pointwise(const RealField& rho, double (*fn)(double, double), double c) {
    if (!rho.all_finite()) throw InvalidInput("composition: non-finite samples");
    if (rho.max_abs() > 50.0) throw InvalidInput("composition: |rho| > 50 rejected (overflow)");
    RealField out(rho.grid(), rho.components());
    for (int comp = 0; comp < rho.components(); ++comp) {
        auto src = rho.component(comp);
        auto dst = out.component(comp);
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = fn(src[i], c);
    }
    return dealias(out);
}

}  // namespace

RealField compose_h1(const RealField& rho, double gamma, double kappa, double n_bar) {
    const double kt = (gamma - 1.0) * kappa / n_bar;
    return compose_pointwise(
        rho, [](double x, double a) { return a * (1.0 - std::exp(-x)); }, kt);
}

RealField compose_h2(const RealField& rho, double n_bar) {
    return compose_pointwise(
        rho, [](double x, double a) { return a * (std::exp(x) - 1.0); }, n_bar);
}

InequalityReport composition_check(const RealField& rho, double n_bar, const BesovParams& bp,
                                   const DyadicPartition& P) {
    RealField h2 = compose_h2(rho, n_bar);
    const double lhs = besov_norm(h2, bp, P).value;
    const int smoothness = static_cast<int>(std::floor(bp.s)) + 1;
    const double rhs = std::pow(1.0 + lp_norm(rho, kInf), smoothness) *
                       besov_norm(rho, bp, P).value;
    InequalityReport rep;
    rep.name = "composition";
    rep.add_ratio(lhs / std::max(rhs, 1e-300));
    return rep;
}

}  // namespace eplab

// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "eplab/besov.hpp"

namespace eplab {

/// Paraproduct T_f g = sum_q S_{q-1} f * Delta_q g (band-limited products).
RealField paraproduct(const RealField& f, const RealField& g, const DyadicPartition& P);

/// Remainder R(f,g) = sum_q Delta_q f * (Delta_{q-1}+Delta_q+Delta_{q+1}) g.
RealField remainder(const RealField& f, const RealField& g, const DyadicPartition& P);

struct BonySplit {
    RealField T_fg;
    RealField T_gf;
    RealField R_fg;
};

/// The three pieces whose sum reproduces the band-limited product f*g.
BonySplit bony_split(const RealField& f, const RealField& g, const DyadicPartition& P);

/// Carrier for empirical inequality constants over an ensemble.
struct InequalityReport {
    std::string name;
    int ensemble_size = 0;
    std::vector<double> ratios;              // LHS/RHS per sample
    double sup_ratio = 0.0;
    std::vector<double> per_q_cq;            // envelope of per-q sequences (optional)
    double cq_l1_sum = 0.0;                  // max ell^1 sum over the ensemble
    std::map<std::string, double> extras;    // named sub-ratios / diagnostics

    void add_ratio(double r);
    void absorb_cq(const std::vector<double>& cq);
    nlohmann::json to_json() const;
};

enum class CommutatorOp { divergence, gradient };

/// The three supported (s, g-weight, f-weight) index cases at p = 2:
///   case 0: s = 1+N/2, f in B^s,    g in B^s
///   case 1: s = N/2,   f in B^s,    g in B^{s+1}
///   case 2: s = N/2,   f in B^{s+1}, g in B^s
struct CommutatorCase {
    int index = 0;
    double s(const Grid& g) const { return index == 0 ? sigma_index(g) : g.dim() / 2.0; }
    double f_extra() const { return index == 2 ? 1.0 : 0.0; }
    double g_extra() const { return index == 1 ? 1.0 : 0.0; }
};

/// Per-q size of [f, Delta_q] A g = f Delta_q(A g) - Delta_q(f A g), scaled by
/// 2^{qs} and normalized by the case's right-hand norms.
InequalityReport commutator_check(const RealField& f, const RealField& g, CommutatorOp op,
                                  const CommutatorCase& cc, const DyadicPartition& P);

/// ||fg||_{B^s_{p,r}} against ||f||_inf ||g||_B + ||g||_inf ||f||_B.
InequalityReport moser_check_classical(const RealField& f, const RealField& g,
                                       const BesovParams& bp, const DyadicPartition& P);

/// Exponent quadruple (p1..p4) with 1/p = 1/p1 + 1/p2 = 1/p3 + 1/p4; supported
/// exponents {1, 2, inf}. Also records the paraproduct / symmetric-paraproduct
/// / remainder sub-ratios of the three-piece split.
InequalityReport moser_check_generalized(const RealField& f, const RealField& g, double s,
                                         double p, double p1, double p2, double p3, double p4,
                                         double r, const DyadicPartition& P);

/// h1(rho) = ((gamma-1) kappa / n_bar)(1 - exp(-rho)), band-limited. Rejects
/// |rho| > 50.
RealField compose_h1(const RealField& rho, double gamma, double kappa, double n_bar);
/// h2(rho) = n_bar (exp(rho) - 1), band-limited. Rejects |rho| > 50.
RealField compose_h2(const RealField& rho, double n_bar);

/// ||h2(rho)||_{B^s} / ((1 + ||rho||_inf)^{[s]+1} ||rho||_{B^s}).
InequalityReport composition_check(const RealField& rho, double n_bar, const BesovParams& bp,
                                   const DyadicPartition& P);

}  // namespace eplab

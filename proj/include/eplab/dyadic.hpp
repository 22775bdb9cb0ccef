// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "eplab/operators.hpp"

namespace eplab {

/// Dyadic partition of unity on the grid's scaled frequency variable
/// xi = |m| (the integer-mode magnitude, i.e. k * L / 2pi).
///
/// chi is a radial C^inf cutoff, identically 1 on |xi| <= 3/4 and supported
/// in the ball |xi| <= 4/3; phi(xi) := chi(xi/2) - chi(xi) is supported in
/// the shell 3/4 <= |xi| <= 8/3. The telescoping identity makes
///   chi(xi) + sum_{q=0}^{Q} phi(2^{-q} xi) = chi(2^{-(Q+1)} xi)
/// exact, so the partition sums to one on the whole retained band
/// |xi| <= (3/4) 2^{q_max+1} = band_radius() by construction.
class DyadicPartition {
public:
    explicit DyadicPartition(const Grid& grid);

    const Grid& grid() const { return grid_; }
    int q_max() const { return q_max_; }

    /// Cutoff functions of the scalar scaled frequency.
    static double chi(double xi);
    static double phi(double xi);
    /// Block symbol: chi for q = -1, phi(2^{-q} xi) for q >= 0.
    static double block_symbol(int q, double xi);

    /// Cached per-mode block multiplier, q in [-1, q_max].
    const std::vector<double>& block_table(int q) const;
    /// Cached per-mode low-pass multiplier chi(2^{-q} xi) for S_q, q >= 0.
    const std::vector<double>& low_table(int q) const;
    /// Scaled frequency magnitude per mode slot.
    const std::vector<double>& xi() const { return xi_; }

private:
    Grid grid_;
    int q_max_;
    std::vector<double> xi_;
    std::vector<std::vector<double>> blocks_;  // index q+1
    std::vector<std::vector<double>> lows_;    // index q
};

RealField delta_q(const RealField& f, int q, const DyadicPartition& P);
SpectralField delta_q(const SpectralField& F, int q, const DyadicPartition& P);

/// Low-frequency cutoff S_q f = sum_{p <= q-1} Delta_p f, q >= 0.
RealField s_q(const RealField& f, int q, const DyadicPartition& P);
SpectralField s_q(const SpectralField& F, int q, const DyadicPartition& P);

struct DyadicDecomposition {
    std::vector<std::pair<int, RealField>> blocks;  // q = -1 .. q_max
    Grid source_grid;
};

DyadicDecomposition decompose(const RealField& f, const DyadicPartition& P);

/// Per-q L2 norms of the blocks computed on the spectral side (Parseval),
/// indexed q+1. One forward transform, no per-block inverses.
std::vector<double> block_l2_profile(const SpectralField& F, const DyadicPartition& P);

struct AlmostOrthReport {
    double max_pair_residual;     // max over |p-q|>=2 of ||D_p D_q f|| / ||f||
    double max_product_residual;  // max over |p-q|>=5 of ||D_q(S_{p-1}f D_p g-type)|| rel
};

/// Block-composition and product-support diagnostics. The product clause is
/// exercised against the field itself (g = f).
AlmostOrthReport check_almost_orthogonality(const RealField& f, const DyadicPartition& P);

struct BernsteinReport {
    int derivative_order;
    std::vector<int> q;            // blocks with non-negligible content
    std::vector<double> ratios;    // sup_{|a|=k} ||d^a D_q f|| / (2^{qk} ||D_q f||)
    double sup_ratio;
    double inf_ratio;
};

/// Derivative-vs-scale ratios per block for k-th derivatives (k = 1 or 2).
BernsteinReport check_bernstein(const RealField& f, int k, const DyadicPartition& P);

/// CSV dump: q, L2_norm, Lp_norm, support_min_k, support_max_k (physical k).
void write_decomposition_csv(const std::filesystem::path& path, const RealField& f,
                             const DyadicPartition& P, double p = 0.0);  // p=0 -> Linf

}  // namespace eplab

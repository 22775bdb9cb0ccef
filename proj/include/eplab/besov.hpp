// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <limits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "eplab/dyadic.hpp"

namespace eplab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Index triple (s, p, r): regularity, integrability, summation exponent.
/// p and r live in [1, inf]; pass kInf for the sup variants.
struct BesovParams {
    double s = 0.0;
    double p = 2.0;
    double r = 1.0;

    void validate() const {
        if (!(p >= 1.0) || !(r >= 1.0))
            throw InvalidInput("besov params: p and r must lie in [1, inf]");
    }
};

/// Critical regularity index for the grid dimension: 1 + N/2.
inline double sigma_index(const Grid& g) { return 1.0 + g.dim() / 2.0; }

struct BesovNorm {
    double value = 0.0;
    std::vector<std::pair<int, double>> per_q;  // (q, 2^{qs} ||Delta_q f||_{L^p})
    BesovParams params;
    int q_lo = -1;
    int q_hi = -1;
};

/// Discrete L^p norm with uniform cell-volume quadrature over the pointwise
/// Euclidean magnitude across components; p = inf is the grid max.
double lp_norm(const RealField& f, double p);

/// ell^r aggregation over q of 2^{qs} ||Delta_q f||_{L^p}, q = -1..q_max.
BesovNorm besov_norm(const RealField& f, const BesovParams& bp, const DyadicPartition& P);

/// p = 2 fast path using per-block Parseval sums; agrees with besov_norm to
/// round-off and costs a single forward transform.
BesovNorm besov_norm_spectral(const SpectralField& F, const BesovParams& bp,
                              const DyadicPartition& P);

/// Snapshots of one field on a uniform grid at strictly increasing times
/// starting at 0.
struct TimeSeries {
    std::vector<double> times;
    std::vector<RealField> fields;

    void validate() const;
    /// Linear interpolation at time t (clamped to the covered interval).
    RealField sample(double t) const;
};

/// Time-inside-the-sum norm: for each q take the L^rho_T norm (trapezoid for
/// rho < inf, max over snapshots for rho = inf) of t -> ||Delta_q f(t)||_{L^p},
/// then aggregate in ell^r with weights 2^{qs}.
double chemin_lerner_norm(const TimeSeries& ts, const BesovParams& bp, double rho,
                          const DyadicPartition& P);

/// The time-outside variant L^rho_T(B^s_{p,r}) on the same snapshots, for the
/// Minkowski-ordering comparisons.
double time_outer_norm(const TimeSeries& ts, const BesovParams& bp, double rho,
                       const DyadicPartition& P);

/// Norm report: {params, q_range, per_q, value}; CSV variant has one row per q.
nlohmann::json to_json(const BesovNorm& bn);
void write_norm_csv(const std::filesystem::path& path, const BesovNorm& bn);

struct EmbeddingReport {
    double ratio_lower_s;       // ||f||_{B^{s-1}} / ||f||_{B^s}, bound 2 exact
    double ratio_coarser_r;     // ||f||_{B^s_{p,2}} / ||f||_{B^s_{p,1}}, bound 1 exact
    double ratio_linf;          // ||f||_{Linf} / ||f||_{B^{N/2}_{2,1}}
};

EmbeddingReport check_embeddings(const RealField& f, const DyadicPartition& P);

}  // namespace eplab

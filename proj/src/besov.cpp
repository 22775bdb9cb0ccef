// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eplab/besov.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace eplab {

double lp_norm(const RealField& f, double p) {
    if (!(p >= 1.0)) throw InvalidInput("lp_norm: p must lie in [1, inf]");
    const std::size_t npts = f.points();
    auto magnitude = [&](std::size_t i) {
        if (f.components() == 1) return std::abs(f.at(0, i));
        double s = 0.0;
        for (int c = 0; c < f.components(); ++c) s += f.at(c, i) * f.at(c, i);
        return std::sqrt(s);
    };
    if (p == kInf) {
        double m = 0.0;
        for (std::size_t i = 0; i < npts; ++i) m = std::max(m, magnitude(i));
        return m;
    }
    double s = 0.0;
    if (p == 2.0) {
        for (std::size_t i = 0; i < npts; ++i) {
            const double v = magnitude(i);
            s += v * v;
        }
    } else if (p == 1.0) {
        for (std::size_t i = 0; i < npts; ++i) s += magnitude(i);
    } else {
        for (std::size_t i = 0; i < npts; ++i) s += std::pow(magnitude(i), p);
    }
    return std::pow(f.grid().cell_volume() * s, 1.0 / p);
}

namespace {

double ell_r(const std::vector<double>& terms, double r) {
    if (r == kInf) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    if (r == 1.0) {
        double s = 0.0;
        for (double t : terms) s += t;
        return s;
    }
    double s = 0.0;
    for (double t : terms) s += std::pow(t, r);
    return std::pow(s, 1.0 / r);
}

BesovNorm assemble(const std::vector<double>& block_norms, const BesovParams& bp, int q_max) {
    BesovNorm bn;
    bn.params = bp;
    bn.q_lo = -1;
    bn.q_hi = q_max;
    std::vector<double> terms;
    terms.reserve(block_norms.size());
    for (int q = -1; q <= q_max; ++q) {
        const double term = std::pow(2.0, q * bp.s) * block_norms[q + 1];
        bn.per_q.emplace_back(q, term);
        terms.push_back(term);
    }
    bn.value = ell_r(terms, bp.r);
    return bn;
}

}  // namespace

BesovNorm besov_norm(const RealField& f, const BesovParams& bp, const DyadicPartition& P) {
    bp.validate();
    SpectralField F = fft_forward(f);
    std::vector<double> block_norms(P.q_max() + 2);
    for (int q = -1; q <= P.q_max(); ++q)
        block_norms[q + 1] = lp_norm(detail::fft_inverse_real(delta_q(F, q, P)), bp.p);
    return assemble(block_norms, bp, P.q_max());
}

BesovNorm besov_norm_spectral(const SpectralField& F, const BesovParams& bp,
                              const DyadicPartition& P) {
    bp.validate();
    if (bp.p != 2.0) throw InvalidInput("besov_norm_spectral: only p = 2 is Parseval-computable");
    return assemble(block_l2_profile(F, P), bp, P.q_max());
}

void TimeSeries::validate() const {
    if (times.size() != fields.size()) throw InvalidInput("time series: length mismatch");
    if (times.empty()) throw InvalidInput("time series: empty");
    if (times.front() != 0.0) throw InvalidInput("time series: first time must be 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw InvalidInput("time series: times not increasing");
}

RealField TimeSeries::sample(double t) const {
    if (fields.size() == 1) return fields.front();
    if (t <= times.front()) return fields.front();
    if (t >= times.back()) return fields.back();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - times.begin());
    const double t0 = times[j - 1], t1 = times[j];
    const double w = (t - t0) / (t1 - t0);
    RealField out = fields[j - 1];
    out *= (1.0 - w);
    out.axpy(w, fields[j]);
    return out;
}

namespace {

double time_norm(const std::vector<double>& g, const std::vector<double>& t, double rho) {
    if (rho == kInf) {
        double m = 0.0;
        for (double v : g) m = std::max(m, v);
        return m;
    }
    if (g.size() < 2) throw InvalidInput("time quadrature requires at least 2 snapshots");
    double s = 0.0;
    for (std::size_t j = 1; j < g.size(); ++j)
        s += 0.5 * (std::pow(g[j - 1], rho) + std::pow(g[j], rho)) * (t[j] - t[j - 1]);
    return std::pow(s, 1.0 / rho);
}

}  // namespace

double chemin_lerner_norm(const TimeSeries& ts, const BesovParams& bp, double rho,
                          const DyadicPartition& P) {
    ts.validate();
    bp.validate();
    if (!(rho >= 1.0)) throw InvalidInput("chemin_lerner_norm: rho must lie in [1, inf]");
    const int nq = P.q_max() + 2;
    // per_block[q+1][j] = ||Delta_q f(t_j)||_{L^p}
    std::vector<std::vector<double>> per_block(nq, std::vector<double>(ts.fields.size()));
    for (std::size_t j = 0; j < ts.fields.size(); ++j) {
        if (bp.p == 2.0) {
            auto prof = block_l2_profile(fft_forward(ts.fields[j]), P);
            for (int qi = 0; qi < nq; ++qi) per_block[qi][j] = prof[qi];
        } else {
            SpectralField F = fft_forward(ts.fields[j]);
            for (int q = -1; q <= P.q_max(); ++q)
                per_block[q + 1][j] = lp_norm(detail::fft_inverse_real(delta_q(F, q, P)), bp.p);
        }
    }
    std::vector<double> terms(nq);
    for (int q = -1; q <= P.q_max(); ++q)
        terms[q + 1] = std::pow(2.0, q * bp.s) * time_norm(per_block[q + 1], ts.times, rho);
    return ell_r(terms, bp.r);
}

double time_outer_norm(const TimeSeries& ts, const BesovParams& bp, double rho,
                       const DyadicPartition& P) {
    ts.validate();
    std::vector<double> g(ts.fields.size());
    for (std::size_t j = 0; j < ts.fields.size(); ++j)
        g[j] = (bp.p == 2.0) ? besov_norm_spectral(fft_forward(ts.fields[j]), bp, P).value
                             : besov_norm(ts.fields[j], bp, P).value;
    return time_norm(g, ts.times, rho);
}

nlohmann::json to_json(const BesovNorm& bn) {
    nlohmann::json per_q = nlohmann::json::array();
    for (const auto& [q, term] : bn.per_q) per_q.push_back({{"q", q}, {"term", term}});
    auto idx = [](double v) -> nlohmann::json {
        if (v == kInf) return "inf";
        return v;
    };
    return {{"params", {{"s", bn.params.s}, {"p", idx(bn.params.p)}, {"r", idx(bn.params.r)}}},
            {"q_range", {bn.q_lo, bn.q_hi}},
            {"per_q", per_q},
            {"value", bn.value}};
}

void write_norm_csv(const std::filesystem::path& path, const BesovNorm& bn) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path.string());
    out << "q,term\n";
    for (const auto& [q, term] : bn.per_q) out << q << ',' << term << '\n';
}

EmbeddingReport check_embeddings(const RealField& f, const DyadicPartition& P) {
    const Grid& g = f.grid();
    const BesovParams base{sigma_index(g), 2.0, 1.0};
    const double b_s = besov_norm(f, base, P).value;
    const double b_lower = besov_norm(f, {base.s - 1.0, 2.0, 1.0}, P).value;
    const double b_r2 = besov_norm(f, {base.s, 2.0, 2.0}, P).value;
    const double b_half = besov_norm(f, {g.dim() / 2.0, 2.0, 1.0}, P).value;
    EmbeddingReport rep{};
    const double tiny = 1e-300;
    rep.ratio_lower_s = b_lower / std::max(b_s, tiny);
    rep.ratio_coarser_r = b_r2 / std::max(b_s, tiny);
    rep.ratio_linf = lp_norm(f, kInf) / std::max(b_half, tiny);
    return rep;
}

}  // namespace eplab

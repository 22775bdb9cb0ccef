// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eplab/dyadic.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>

namespace eplab {

namespace {

double ramp(double t) { return t <= 0.0 ? 0.0 : std::exp(-1.0 / t); }

// C^inf monotone step: 0 for t <= 0, 1 for t >= 1.
double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = ramp(t);
    const double b = ramp(1.0 - t);
    return a / (a + b);
}

}  // namespace

double DyadicPartition::chi(double xi) {
    const double r = std::abs(xi);
    return 1.0 - smoothstep((r - 0.75) / (4.0 / 3.0 - 0.75));
}

double DyadicPartition::phi(double xi) { return chi(xi / 2.0) - chi(xi); }

double DyadicPartition::block_symbol(int q, double xi) {
    return q == -1 ? chi(xi) : phi(std::ldexp(xi, -q));
}

DyadicPartition::DyadicPartition(const Grid& grid) : grid_(grid) {
    // Largest q whose shell outer edge (8/3) 2^q fits under the 2/3 cutoff.
    q_max_ = static_cast<int>(std::floor(std::log2(grid.dealias_cutoff() / (8.0 / 3.0)) + 1e-12));
    if (q_max_ < 0)
        throw ConfigError("grid too coarse to host any q >= 0 dyadic block");

    xi_.resize(grid.total_points());
    for_each_mode(grid, [&](std::size_t flat, int m0, int m1, int m2) {
        xi_[flat] = std::sqrt(1.0 * m0 * m0 + 1.0 * m1 * m1 + 1.0 * m2 * m2);
    });

    blocks_.resize(q_max_ + 2);
    for (int q = -1; q <= q_max_; ++q) {
        auto& t = blocks_[q + 1];
        t.resize(xi_.size());
        for (std::size_t i = 0; i < xi_.size(); ++i) t[i] = block_symbol(q, xi_[i]);
    }
    lows_.resize(q_max_ + 3);
    for (int q = 0; q <= q_max_ + 2; ++q) {
        auto& t = lows_[q];
        t.resize(xi_.size());
        for (std::size_t i = 0; i < xi_.size(); ++i) t[i] = chi(std::ldexp(xi_[i], -q));
    }
}

const std::vector<double>& DyadicPartition::block_table(int q) const {
    if (q < -1 || q > q_max_) throw InvalidInput("block index q out of range");
    return blocks_[q + 1];
}

const std::vector<double>& DyadicPartition::low_table(int q) const {
    if (q < 0 || q > q_max_ + 2) throw InvalidInput("low-pass index q out of range");
    return lows_[q];
}

namespace {

SpectralField apply_table(const SpectralField& F, const std::vector<double>& table) {
    SpectralField out(F.grid(), F.components());
    for (int c = 0; c < F.components(); ++c) {
        auto src = F.component(c);
        auto dst = out.component(c);
        for (std::size_t i = 0; i < table.size(); ++i) dst[i] = table[i] * src[i];
    }
    return out;
}

}  // namespace

SpectralField delta_q(const SpectralField& F, int q, const DyadicPartition& P) {
    return apply_table(F, P.block_table(q));
}

RealField delta_q(const RealField& f, int q, const DyadicPartition& P) {
    return detail::fft_inverse_real(delta_q(fft_forward(f), q, P));
}

SpectralField s_q(const SpectralField& F, int q, const DyadicPartition& P) {
    if (q < 0) throw InvalidInput("s_q: q must be >= 0");
    // Beyond the cached range the cutoff is identity on retained modes.
    if (q > P.q_max() + 2) return F;
    return apply_table(F, P.low_table(q));
}

RealField s_q(const RealField& f, int q, const DyadicPartition& P) {
    return detail::fft_inverse_real(s_q(fft_forward(f), q, P));
}

DyadicDecomposition decompose(const RealField& f, const DyadicPartition& P) {
    DyadicDecomposition d{{}, f.grid()};
    SpectralField F = fft_forward(f);
    d.blocks.reserve(P.q_max() + 2);
    for (int q = -1; q <= P.q_max(); ++q)
        d.blocks.emplace_back(q, detail::fft_inverse_real(delta_q(F, q, P)));
    return d;
}

std::vector<double> block_l2_profile(const SpectralField& F, const DyadicPartition& P) {
    std::vector<double> out(P.q_max() + 2, 0.0);
    const double V = F.grid().volume();
    for (int q = -1; q <= P.q_max(); ++q) {
        const auto& t = P.block_table(q);
        double s = 0.0;
        for (int c = 0; c < F.components(); ++c) {
            auto span = F.component(c);
            for (std::size_t i = 0; i < t.size(); ++i) s += t[i] * t[i] * std::norm(span[i]);
        }
        out[q + 1] = std::sqrt(V * s);
    }
    return out;
}

AlmostOrthReport check_almost_orthogonality(const RealField& f, const DyadicPartition& P) {
    AlmostOrthReport rep{0.0, 0.0};
    const double fnorm = l2_norm(f);
    if (fnorm == 0.0) return rep;
    SpectralField F = fft_forward(f);

    for (int q = -1; q <= P.q_max(); ++q) {
        SpectralField block = delta_q(F, q, P);
        for (int p = -1; p <= P.q_max(); ++p) {
            if (std::abs(p - q) < 2) continue;
            rep.max_pair_residual =
                std::max(rep.max_pair_residual, spectral_l2_norm(delta_q(block, p, P)) / fnorm);
        }
    }

    // Product-support clause with g = f: D_q(S_{p-1} f * D_p f) for |p-q| >= 5.
    for (int p = 1; p <= P.q_max(); ++p) {
        RealField prod = multiply_dealiased(detail::fft_inverse_real(s_q(F, p - 1, P)),
                                            detail::fft_inverse_real(delta_q(F, p, P)));
        const double pnorm = std::max(l2_norm(prod), 1e-300);
        SpectralField ph = fft_forward(prod);
        for (int q = -1; q <= P.q_max(); ++q) {
            if (std::abs(p - q) < 5) continue;
            rep.max_product_residual =
                std::max(rep.max_product_residual, spectral_l2_norm(delta_q(ph, q, P)) / pnorm);
        }
    }
    return rep;
}

BernsteinReport check_bernstein(const RealField& f, int k, const DyadicPartition& P) {
    if (k < 1 || k > 2) throw InvalidInput("check_bernstein: k must be 1 or 2");
    BernsteinReport rep{k, {}, {}, 0.0, std::numeric_limits<double>::infinity()};
    SpectralField F = fft_forward(f);
    const double floor_norm = 1e-13 * std::max(spectral_l2_norm(F), 1e-300);
    const Grid& g = f.grid();
    for (int q = -1; q <= P.q_max(); ++q) {
        SpectralField block = delta_q(F, q, P);
        const double bnorm = spectral_l2_norm(block);
        if (bnorm <= floor_norm) continue;
        // sup over multi-indices |a| = k of ||d^a block||_{L2}.
        double sup_deriv = 0.0;
        auto deriv_norm = [&](const std::array<int, 3>& alpha) {
            const double k0 = g.fundamental();
            double s = 0.0;
            for_each_mode(g, [&](std::size_t flat, int m0, int m1, int m2) {
                double w = 1.0;
                const int m[3] = {m0, m1, m2};
                for (int d = 0; d < 3; ++d)
                    for (int j = 0; j < alpha[d]; ++j) w *= k0 * m[d];
                s += w * w * std::norm(block.at(0, flat));
            });
            return std::sqrt(g.volume() * s);
        };
        for (int a0 = 0; a0 <= k; ++a0)
            for (int a1 = 0; a1 <= k - a0; ++a1) {
                const int a2 = k - a0 - a1;
                if ((a1 > 0 && g.dim() < 2) || (a2 > 0 && g.dim() < 3)) continue;
                sup_deriv = std::max(sup_deriv, deriv_norm({a0, a1, a2}));
            }
        const double ratio = sup_deriv / (std::ldexp(1.0, q * k) * bnorm);
        rep.q.push_back(q);
        rep.ratios.push_back(ratio);
        rep.sup_ratio = std::max(rep.sup_ratio, ratio);
        rep.inf_ratio = std::min(rep.inf_ratio, ratio);
    }
    return rep;
}

void write_decomposition_csv(const std::filesystem::path& path, const RealField& f,
                             const DyadicPartition& P, double p) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path.string());
    out << "q,L2_norm,Lp_norm,support_min_k,support_max_k\n";
    const double k0 = f.grid().fundamental();
    DyadicDecomposition d = decompose(f, P);
    for (const auto& [q, block] : d.blocks) {
        const double lo = q == -1 ? 0.0 : k0 * 0.75 * std::ldexp(1.0, q);
        const double hi = q == -1 ? k0 * 4.0 / 3.0 : k0 * (8.0 / 3.0) * std::ldexp(1.0, q);
        double lp = 0.0;
        if (p <= 0.0) {
            lp = block.max_abs();
        } else {
            for (int c = 0; c < block.components(); ++c)
                for (double v : block.component(c)) lp += std::pow(std::abs(v), p);
            lp = std::pow(f.grid().cell_volume() * lp, 1.0 / p);
        }
        out << q << ',' << l2_norm(block) << ',' << lp << ',' << lo << ',' << hi << '\n';
    }
}

}  // namespace eplab

// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eplab/initial_data.hpp"

#include <cmath>

#include "eplab/random_fields.hpp"

namespace eplab {

DataFamily data_family_from_string(const std::string& name) {
    if (name == "gaussian_bump") return DataFamily::gaussian_bump;
    if (name == "acoustic_tone") return DataFamily::acoustic_tone;
    if (name == "random_bandlimited") return DataFamily::random_bandlimited;
    throw ConfigError("unknown initial data family: " + name);
}

std::string to_string(DataFamily f) {
    switch (f) {
        case DataFamily::gaussian_bump: return "gaussian_bump";
        case DataFamily::acoustic_tone: return "acoustic_tone";
        case DataFamily::random_bandlimited: return "random_bandlimited";
    }
    return "?";
}

RealField smooth_bump(const Grid& g, const std::array<double, 3>& center, double rel_width) {
    RealField f(g, 1);
    const double L = g.box_length();
    const double w = rel_width * L;
    auto dst = f.component(0);
    // Periodize by an image sum (separable per axis); +/-3 images keep the
    // truncation below round-off for widths up to L/3.
    auto axis_sum = [&](double dx) {
        double s = 0.0;
        for (int j = -3; j <= 3; ++j) {
            const double r = dx + j * L;
            s += std::exp(-r * r / (2.0 * w * w));
        }
        return s;
    };
    for_each_point(g, [&](std::size_t flat, double x0, double x1, double x2) {
        const double x[3] = {x0, x1, x2};
        double v = 1.0;
        for (int d = 0; d < g.dim(); ++d) v *= axis_sum(x[d] - center[d] * L);
        dst[flat] = v;
    });
    const double mz = mean(f);
    for (auto& v : f.component(0)) v -= mz;
    f = dealias(f);
    const double mx = f.max_abs();
    if (mx > 0.0) f *= 1.0 / mx;
    return f;
}

namespace {

// Extra smoothing weight (one derivative's worth) applied to theta0.
RealField extra_smooth(const RealField& f) {
    SpectralField F = fft_forward(f);
    for_each_mode(f.grid(), [&](std::size_t flat, int m0, int m1, int m2) {
        const double mm = 1.0 * m0 * m0 + 1.0 * m1 * m1 + 1.0 * m2 * m2;
        const double w = 1.0 / std::sqrt(1.0 + mm / 9.0);
        for (int c = 0; c < f.components(); ++c) F.at(c, flat) *= w;
    });
    return detail::fft_inverse_real(F);
}

}  // namespace

EPState generate_initial_data(const InitialDataFamily& family, const Grid& grid,
                              const PhysicalParams& pp, const DyadicPartition& P,
                              bool* amplitude_clamped) {
    pp.validate();
    (void)P;
    double amp = family.amplitude;
    // n0 = n_bar exp(rho0) with |rho0| <= amp; min n0 >= n_bar/2 needs amp <= ln 2.
    const double amp_cap = std::log(2.0);
    const bool clamp = std::abs(amp) > amp_cap;
    if (clamp) amp = std::copysign(amp_cap, amp);
    if (amplitude_clamped) *amplitude_clamped = clamp;

    EPState s = zero_state(grid);
    switch (family.name) {
        case DataFamily::gaussian_bump: {
            s.rho = smooth_bump(grid, {0.5, 0.5, 0.5}, 1.0 / 8.0);
            s.rho *= amp;
            RealField bump_a = smooth_bump(grid, {0.35, 0.6, 0.5}, 1.0 / 7.0);
            RealField bump_b = smooth_bump(grid, {0.65, 0.4, 0.45}, 1.0 / 9.0);
            for (int d = 0; d < grid.dim(); ++d) {
                auto dst = s.u.component(d);
                auto src = (d % 2 == 0 ? bump_a : bump_b).component(0);
                for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = amp * src[i];
            }
            RealField th = smooth_bump(grid, {0.55, 0.55, 0.6}, 1.0 / 6.0);
            s.theta = extra_smooth(th);
            s.theta *= amp;
            break;
        }
        case DataFamily::acoustic_tone: {
            auto dst = s.rho.component(0);
            const double k = kTwoPi / grid.box_length();
            for_each_point(grid, [&](std::size_t flat, double x0, double, double) {
                dst[flat] = amp * std::cos(k * x0);
            });
            break;
        }
        case DataFamily::random_bandlimited: {
            RealField r = random_bandlimited_field(grid, -2.0, family.seed);
            r *= 1.0 / std::max(r.max_abs(), 1e-300);
            s.rho = r;
            s.rho *= amp;
            RealField uv = random_bandlimited_field(grid, -2.0, family.seed + 1, grid.dim());
            uv *= amp / std::max(uv.max_abs(), 1e-300);
            s.u = uv;
            RealField th = random_bandlimited_field(grid, -3.0, family.seed + 2);
            th *= amp / std::max(th.max_abs(), 1e-300);
            s.theta = extra_smooth(th);
            break;
        }
    }
    s.E = inverse_laplacian_gradient(compose_h2(s.rho, pp.n_bar));
    s.time = 0.0;
    return s;
}

}  // namespace eplab

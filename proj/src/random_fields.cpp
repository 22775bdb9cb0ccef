// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eplab/random_fields.hpp"

#include <cmath>
#include <random>

namespace eplab {

RealField random_bandlimited_field(const Grid& grid, double spectral_slope, std::uint64_t seed,
                                   int components) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    SpectralField F(grid, components);
    const long long n = grid.points_per_axis();
    for_each_mode(grid, [&](std::size_t flat, int m0, int m1, int m2) {
        const long long mm = 1LL * m0 * m0 + 1LL * m1 * m1 + 1LL * m2 * m2;
        if (mm == 0 || 256 * mm > 9 * n * n) return;
        const double amp = std::pow(std::sqrt(double(mm)), spectral_slope);
        for (int c = 0; c < components; ++c) {
            const double th = phase(rng);
            F.at(c, flat) = amp * std::complex<double>(std::cos(th), std::sin(th));
        }
    });
    // Hermitian projection: average with the conjugate of the reflected set.
    const int np = grid.points_per_axis();
    auto reflect = [np](int m) { return m == 0 ? 0 : np - m; };
    SpectralField H(grid, components);
    const int dim = grid.dim();
    for_each_mode(grid, [&](std::size_t flat, int m0, int m1, int m2) {
        auto pos = [&](int m) { return m >= 0 ? m : m + np; };
        std::size_t rflat = reflect(pos(m0));
        if (dim >= 2) rflat = rflat * np + reflect(pos(m1));
        if (dim >= 3) rflat = rflat * np + reflect(pos(m2));
        for (int c = 0; c < components; ++c)
            H.at(c, flat) = 0.5 * (F.at(c, flat) + std::conj(F.at(c, rflat)));
    });
    RealField f = fft_inverse(H);
    const double nrm = l2_norm(f);
    if (nrm > 0.0) f *= 1.0 / nrm;
    return f;
}

}  // namespace eplab

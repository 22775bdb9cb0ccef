// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "eplab/ep_system.hpp"

namespace eplab {

enum class DataFamily { gaussian_bump, acoustic_tone, random_bandlimited };

DataFamily data_family_from_string(const std::string& name);
std::string to_string(DataFamily f);

struct InitialDataFamily {
    DataFamily name = DataFamily::gaussian_bump;
    double amplitude = 0.01;
    std::uint64_t seed = 1;
};

/// Periodized Gaussian bump centered at `center` (fractions of the box),
/// band-limited, mean removed, max-normalized.
RealField smooth_bump(const Grid& g, const std::array<double, 3>& center, double rel_width);

/// Build t = 0 data in the transformed variables. The density stays positive
/// by construction (n = n_bar e^rho); amplitudes are clamped so that
/// min n0 >= n_bar/2, with a warning flag if clamping fired. theta0 carries
/// one extra low-pass smoothing weight relative to (rho0, u0), and
/// E0 = grad(Delta^{-1})(n0 - n_bar) so the elliptic constraint holds at
/// t = 0 to round-off.
EPState generate_initial_data(const InitialDataFamily& family, const Grid& grid,
                              const PhysicalParams& pp, const DyadicPartition& P,
                              bool* amplitude_clamped = nullptr);

}  // namespace eplab

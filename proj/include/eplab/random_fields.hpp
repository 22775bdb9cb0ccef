// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "eplab/operators.hpp"

namespace eplab {

/// Seeded random band-limited field: coefficient magnitudes |m|^slope with
/// random phases on the retained ball, Hermitian-symmetrized, zero mean,
/// normalized to unit L2 norm. Deterministic per (grid, slope, seed).
RealField random_bandlimited_field(const Grid& grid, double spectral_slope, std::uint64_t seed,
                                   int components = 1);

/// Slope cycling {-1,-2,-3} used by ensemble checks.
inline double ensemble_slope(int member) { return -1.0 - (member % 3); }

}  // namespace eplab

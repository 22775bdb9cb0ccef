// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <functional>

#include "eplab/field.hpp"

namespace eplab {

/// Forward transform to Fourier-series coefficients (normalized by 1/n^N).
/// Rejects non-finite samples.
SpectralField fft_forward(const RealField& f);

/// Inverse transform. The coefficient set must be Hermitian-symmetric so the
/// result is real to round-off; a relative imaginary residue beyond
/// `hermitian_tol` is rejected.
RealField fft_inverse(const SpectralField& F, double hermitian_tol = 1e-12);

namespace detail {
/// Real part of the inverse transform, no symmetry validation. For spectra
/// the library built itself from real samples through symmetry-preserving
/// multipliers; validating those against the output scale misfires whenever
/// an operator cancels the dominant mode (e.g. gradients of
/// constant-shifted fields).
RealField fft_inverse_real(const SpectralField& F);
}  // namespace detail

/// Multiplier of the physical wavevector k = (2*pi/L) * m.
using Multiplier = std::function<std::complex<double>(const std::array<double, 3>&)>;

/// Pointwise multiplication of coefficients by m(k). The multiplier must be
/// finite at every represented wavevector.
SpectralField apply_multiplier(const SpectralField& F, const Multiplier& m);

/// L2 norm computed on the spectral side (Parseval): sqrt(V * sum |F_k|^2),
/// summed over components.
double spectral_l2_norm(const SpectralField& F);

}  // namespace eplab

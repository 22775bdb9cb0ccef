// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "eplab/fft.hpp"

namespace eplab {

/// Zero every coefficient outside the retained spectral ball |m| <= 3n/16.
void dealias_inplace(SpectralField& F);
SpectralField dealiased(SpectralField F);

/// Band-limit a sampled field (round trip through the spectral ball).
RealField dealias(const RealField& f);

/// Pointwise product, band-limited afterwards. Scalar*scalar, scalar*vector
/// or componentwise vector*vector (same component count).
RealField multiply_dealiased(const RealField& a, const RealField& b);

/// Mean value (per-component average; component 0 for scalars).
double mean(const RealField& f, int component = 0);

RealField gradient(const RealField& f);              // scalar -> vector
RealField divergence(const RealField& u);            // vector -> scalar
RealField laplacian(const RealField& f);             // componentwise
RealField advect(const RealField& v, const RealField& a);  // (v . grad) a, dealiased

SpectralField gradient_spec(const SpectralField& f);
SpectralField divergence_spec(const SpectralField& u);
SpectralField laplacian_spec(const SpectralField& f);

/// grad(Delta^{-1} f) for scalar f; the zero mode is annihilated (on the
/// torus the inverse Laplacian exists only on mean-zero data). If |mean(f)|
/// exceeds mean_tolerance a neutrality warning is recorded in *warned.
RealField inverse_laplacian_gradient(const RealField& f, double mean_tolerance = 1e-10,
                                     bool* warned = nullptr);

/// Scalar Delta^{-1} f (zero-mean convention), same neutrality handling.
RealField inverse_laplacian(const RealField& f, double mean_tolerance = 1e-10,
                            bool* warned = nullptr);

/// grad(Delta^{-1} div u): the curl-free part of u minus its mean. Idempotent.
RealField leray_type_projection(const RealField& u);
SpectralField leray_type_projection_spec(const SpectralField& u);

/// L2 norm of the curl (2D: scalar vorticity; 3D: vector curl).
double curl_l2_norm(const RealField& u);

/// Physical-space L2 norm (cell-volume quadrature over the pointwise
/// Euclidean magnitude across components).
double l2_norm(const RealField& f);

/// Exact spectral zero-padding onto a finer grid (same dim and box length).
RealField refine_to(const RealField& f, const Grid& fine);

}  // namespace eplab

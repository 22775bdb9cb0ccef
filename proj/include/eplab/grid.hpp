// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "eplab/errors.hpp"

namespace eplab {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform periodic box [0, L)^N, N in {1,2,3}, with n points per axis
/// (n a power of two, n >= 8). Wavenumbers are k = (2*pi/L) * m for integer
/// multi-indices m in the symmetric range.
class Grid {
public:
    Grid() = default;
    Grid(int dim, int points_per_axis, double box_length)
        : dim_(dim), n_(points_per_axis), length_(box_length) {
        if (dim < 1 || dim > 3)
            throw InvalidInput("grid: dim must be 1, 2 or 3, got " + std::to_string(dim));
        if (points_per_axis < 8 || (points_per_axis & (points_per_axis - 1)) != 0)
            throw InvalidInput("grid: points_per_axis must be a power of two >= 8, got " +
                               std::to_string(points_per_axis));
        if (!(box_length > 0.0) || !std::isfinite(box_length))
            throw InvalidInput("grid: box_length must be positive and finite");
    }

    int dim() const { return dim_; }
    int points_per_axis() const { return n_; }
    double box_length() const { return length_; }

    std::size_t total_points() const {
        std::size_t t = 1;
        for (int d = 0; d < dim_; ++d) t *= static_cast<std::size_t>(n_);
        return t;
    }
    double spacing() const { return length_ / n_; }
    double cell_volume() const { return std::pow(spacing(), dim_); }
    double volume() const { return std::pow(length_, dim_); }
    /// Fundamental wavenumber 2*pi/L; physical k = fundamental() * m.
    double fundamental() const { return kTwoPi / length_; }

    /// Radius (in integer-mode units |m|) of the retained spectral ball.
    /// Fields are kept band-limited to |m| <= 3n/16; the dyadic ladder is
    /// complete there and pointwise products of band-limited fields are
    /// alias-free on this grid (2 * 3n/16 < n/2).
    double band_radius() const { return 3.0 * n_ / 16.0; }

    /// Radial 2/3-rule cutoff (in mode units) used to derive the ladder depth.
    double dealias_cutoff() const { return n_ / 3.0; }

    bool operator==(const Grid&) const = default;

private:
    int dim_ = 2;
    int n_ = 8;
    double length_ = kTwoPi;
};

/// Signed mode index for FFT storage position idx along an axis of n points.
inline int signed_mode(int idx, int n) { return idx <= n / 2 ? idx : idx - n; }

/// Visit every spectral storage slot in row-major order. fn receives
/// (flat_index, m0, m1, m2) with unused trailing modes fixed at 0.
template <typename F>
void for_each_mode(const Grid& g, F&& fn) {
    const int n = g.points_per_axis();
    const int dim = g.dim();
    const int n0 = n;
    const int n1 = dim >= 2 ? n : 1;
    const int n2 = dim >= 3 ? n : 1;
    std::size_t flat = 0;
    for (int i0 = 0; i0 < n0; ++i0) {
        const int m0 = signed_mode(i0, n);
        for (int i1 = 0; i1 < n1; ++i1) {
            const int m1 = dim >= 2 ? signed_mode(i1, n) : 0;
            for (int i2 = 0; i2 < n2; ++i2, ++flat) {
                const int m2 = dim >= 3 ? signed_mode(i2, n) : 0;
                fn(flat, m0, m1, m2);
            }
        }
    }
}

/// Visit every sample point in row-major order. fn receives (flat, x0, x1, x2).
template <typename F>
void for_each_point(const Grid& g, F&& fn) {
    const int n = g.points_per_axis();
    const int dim = g.dim();
    const double h = g.spacing();
    const int n0 = n;
    const int n1 = dim >= 2 ? n : 1;
    const int n2 = dim >= 3 ? n : 1;
    std::size_t flat = 0;
    for (int i0 = 0; i0 < n0; ++i0)
        for (int i1 = 0; i1 < n1; ++i1)
            for (int i2 = 0; i2 < n2; ++i2, ++flat)
                fn(flat, i0 * h, i1 * h, i2 * h);
}

}  // namespace eplab

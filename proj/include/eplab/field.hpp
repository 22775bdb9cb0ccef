// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "eplab/grid.hpp"

namespace eplab {

/// Sampled real field on a periodic grid: scalar (1 component) or vector
/// (grid.dim() components). Storage is component-major, each component in
/// row-major point order.
class RealField {
public:
    RealField() = default;
    RealField(const Grid& grid, int components, double fill = 0.0)
        : grid_(grid), components_(components),
          data_(static_cast<std::size_t>(components) * grid.total_points(), fill) {
        if (components != 1 && components != grid.dim())
            throw InvalidInput("field: components must be 1 or grid.dim()");
    }

    const Grid& grid() const { return grid_; }
    int components() const { return components_; }
    std::size_t points() const { return grid_.total_points(); }

    double& at(int c, std::size_t i) { return data_[static_cast<std::size_t>(c) * points() + i]; }
    double at(int c, std::size_t i) const { return data_[static_cast<std::size_t>(c) * points() + i]; }
    std::span<double> component(int c) { return {data_.data() + static_cast<std::size_t>(c) * points(), points()}; }
    std::span<const double> component(int c) const {
        return {data_.data() + static_cast<std::size_t>(c) * points(), points()};
    }
    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    RealField& operator+=(const RealField& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    RealField& operator-=(const RealField& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    RealField& operator*=(double a) {
        for (double& v : data_) v *= a;
        return *this;
    }
    /// this += a * o
    RealField& axpy(double a, const RealField& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * o.data_[i];
        return *this;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    Grid grid_;
    int components_ = 1;
    std::vector<double> data_;
};

inline RealField operator+(RealField a, const RealField& b) { return a += b; }
inline RealField operator-(RealField a, const RealField& b) { return a -= b; }
inline RealField operator*(double s, RealField a) { return a *= s; }

/// Fourier-series coefficients of a RealField: f(x) = sum_k F_k exp(i k.x).
/// Same logical layout as RealField, full complex storage per component.
/// Real fields correspond to Hermitian-symmetric coefficient sets.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(const Grid& grid, int components)
        : grid_(grid), components_(components),
          data_(static_cast<std::size_t>(components) * grid.total_points()) {
        if (components != 1 && components != grid.dim())
            throw InvalidInput("field: components must be 1 or grid.dim()");
    }

    const Grid& grid() const { return grid_; }
    int components() const { return components_; }
    std::size_t points() const { return grid_.total_points(); }

    std::complex<double>& at(int c, std::size_t i) {
        return data_[static_cast<std::size_t>(c) * points() + i];
    }
    const std::complex<double>& at(int c, std::size_t i) const {
        return data_[static_cast<std::size_t>(c) * points() + i];
    }
    std::span<std::complex<double>> component(int c) {
        return {data_.data() + static_cast<std::size_t>(c) * points(), points()};
    }
    std::span<const std::complex<double>> component(int c) const {
        return {data_.data() + static_cast<std::size_t>(c) * points(), points()};
    }

    SpectralField& operator+=(const SpectralField& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    SpectralField& operator*=(double a) {
        for (auto& v : data_) v *= a;
        return *this;
    }

private:
    Grid grid_;
    int components_ = 1;
    std::vector<std::complex<double>> data_;
};

}  // namespace eplab

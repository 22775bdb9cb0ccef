// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eplab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace eplab {

namespace {

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
// Each thread keeps its own scratch buffer + plans, created under the global
// planner mutex.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanSet {
    fftw_complex* buf = nullptr;
    std::size_t size = 0;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    ~PlanSet() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (buf) fftw_free(buf);
    }
};

using PlanKey = std::tuple<int, int>;  // (dim, n)

PlanSet& plans_for(const Grid& g) {
    thread_local std::map<PlanKey, PlanSet> cache;
    PlanKey key{g.dim(), g.points_per_axis()};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    PlanSet& ps = cache[key];
    ps.size = g.total_points();
    ps.buf = fftw_alloc_complex(ps.size);
    int dims[3] = {g.points_per_axis(), g.points_per_axis(), g.points_per_axis()};
    std::lock_guard<std::mutex> lock(planner_mutex());
    ps.fwd = fftw_plan_dft(g.dim(), dims, ps.buf, ps.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    ps.bwd = fftw_plan_dft(g.dim(), dims, ps.buf, ps.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    return ps;
}

}  // namespace

SpectralField fft_forward(const RealField& f) {
    if (!f.all_finite()) throw InvalidInput("fft_forward: non-finite samples");
    const Grid& g = f.grid();
    PlanSet& ps = plans_for(g);
    SpectralField out(g, f.components());
    const double norm = 1.0 / static_cast<double>(g.total_points());
    for (int c = 0; c < f.components(); ++c) {
        auto src = f.component(c);
        for (std::size_t i = 0; i < ps.size; ++i) {
            ps.buf[i][0] = src[i];
            ps.buf[i][1] = 0.0;
        }
        fftw_execute(ps.fwd);
        auto dst = out.component(c);
        for (std::size_t i = 0; i < ps.size; ++i)
            dst[i] = std::complex<double>(ps.buf[i][0] * norm, ps.buf[i][1] * norm);
    }
    return out;
}

namespace {

RealField inverse_impl(const SpectralField& F, double* max_real, double* max_imag) {
    const Grid& g = F.grid();
    PlanSet& ps = plans_for(g);
    RealField out(g, F.components());
    for (int c = 0; c < F.components(); ++c) {
        auto src = F.component(c);
        for (std::size_t i = 0; i < ps.size; ++i) {
            ps.buf[i][0] = src[i].real();
            ps.buf[i][1] = src[i].imag();
        }
        fftw_execute(ps.bwd);
        auto dst = out.component(c);
        for (std::size_t i = 0; i < ps.size; ++i) {
            dst[i] = ps.buf[i][0];
            if (max_real) *max_real = std::max(*max_real, std::abs(ps.buf[i][0]));
            if (max_imag) *max_imag = std::max(*max_imag, std::abs(ps.buf[i][1]));
        }
    }
    return out;
}

}  // namespace

RealField fft_inverse(const SpectralField& F, double hermitian_tol) {
    double max_real = 0.0, max_imag = 0.0;
    RealField out = inverse_impl(F, &max_real, &max_imag);
    // A Hermitian-symmetric coefficient set inverts to a real signal; any
    // violation shows up as an imaginary residue.
    if (max_imag > hermitian_tol * std::max(max_real, 1e-300) && max_imag > 1e-300)
        throw InvalidInput("fft_inverse: coefficients violate Hermitian symmetry");
    return out;
}

RealField detail::fft_inverse_real(const SpectralField& F) {
    return inverse_impl(F, nullptr, nullptr);
}

SpectralField apply_multiplier(const SpectralField& F, const Multiplier& m) {
    const Grid& g = F.grid();
    const double k0 = g.fundamental();
    SpectralField out(g, F.components());
    std::vector<std::complex<double>> table(g.total_points());
    for_each_mode(g, [&](std::size_t flat, int m0, int m1, int m2) {
        const std::array<double, 3> k{k0 * m0, k0 * m1, k0 * m2};
        const std::complex<double> v = m(k);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw InvalidInput("apply_multiplier: multiplier not finite at a represented wavevector");
        table[flat] = v;
    });
    for (int c = 0; c < F.components(); ++c) {
        auto src = F.component(c);
        auto dst = out.component(c);
        for (std::size_t i = 0; i < table.size(); ++i) dst[i] = table[i] * src[i];
    }
    return out;
}

double spectral_l2_norm(const SpectralField& F) {
    double s = 0.0;
    for (int c = 0; c < F.components(); ++c)
        for (const auto& v : F.component(c)) s += std::norm(v);
    return std::sqrt(F.grid().volume() * s);
}

}  // namespace eplab

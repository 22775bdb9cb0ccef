// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eplab/operators.hpp"

#include <algorithm>

namespace eplab {

namespace {

// |m|^2 <= (3n/16)^2, in exact integer arithmetic (256 |m|^2 <= 9 n^2).
inline bool in_band(long long m2, long long n) { return 256 * m2 <= 9 * n * n; }

}  // namespace

void dealias_inplace(SpectralField& F) {
    const Grid& g = F.grid();
    const long long n = g.points_per_axis();
    std::vector<bool> keep(g.total_points());
    for_each_mode(g, [&](std::size_t flat, int m0, int m1, int m2) {
        const long long mm = 1LL * m0 * m0 + 1LL * m1 * m1 + 1LL * m2 * m2;
        keep[flat] = in_band(mm, n);
    });
    for (int c = 0; c < F.components(); ++c) {
        auto span = F.component(c);
        for (std::size_t i = 0; i < span.size(); ++i)
            if (!keep[i]) span[i] = 0.0;
    }
}

SpectralField dealiased(SpectralField F) {
    dealias_inplace(F);
    return F;
}

RealField dealias(const RealField& f) {
    SpectralField F = fft_forward(f);
    dealias_inplace(F);
    return detail::fft_inverse_real(F);
}

RealField multiply_dealiased(const RealField& a, const RealField& b) {
    if (!(a.grid() == b.grid())) throw InvalidInput("multiply: grid mismatch");
    const RealField* s = &a;
    const RealField* v = &b;
    if (a.components() > b.components()) std::swap(s, v);
    if (s->components() != v->components() && s->components() != 1)
        throw InvalidInput("multiply: incompatible component counts");
    RealField out(a.grid(), v->components());
    for (int c = 0; c < v->components(); ++c) {
        auto sc = s->component(s->components() == 1 ? 0 : c);
        auto vc = v->component(c);
        auto oc = out.component(c);
        for (std::size_t i = 0; i < oc.size(); ++i) oc[i] = sc[i] * vc[i];
    }
    return dealias(out);
}

double mean(const RealField& f, int component) {
    double s = 0.0;
    for (double v : f.component(component)) s += v;
    return s / static_cast<double>(f.points());
}

SpectralField gradient_spec(const SpectralField& f) {
    if (f.components() != 1) throw InvalidInput("gradient: scalar field expected");
    const Grid& g = f.grid();
    const double k0 = g.fundamental();
    SpectralField out(g, g.dim());
    auto src = f.component(0);
    for_each_mode(g, [&](std::size_t flat, int m0, int m1, int m2) {
        const std::complex<double> iv(0.0, 1.0);
        const int m[3] = {m0, m1, m2};
        for (int d = 0; d < g.dim(); ++d) out.at(d, flat) = iv * (k0 * m[d]) * src[flat];
    });
    return out;
}

SpectralField divergence_spec(const SpectralField& u) {
    const Grid& g = u.grid();
    if (u.components() != g.dim()) throw InvalidInput("divergence: vector field expected");
    const double k0 = g.fundamental();
    SpectralField out(g, 1);
    for_each_mode(g, [&](std::size_t flat, int m0, int m1, int m2) {
        const std::complex<double> iv(0.0, 1.0);
        const int m[3] = {m0, m1, m2};
        std::complex<double> s = 0.0;
        for (int d = 0; d < g.dim(); ++d) s += iv * (k0 * m[d]) * u.at(d, flat);
        out.at(0, flat) = s;
    });
    return out;
}

SpectralField laplacian_spec(const SpectralField& f) {
    const Grid& g = f.grid();
    const double k0 = g.fundamental();
    SpectralField out(g, f.components());
    for_each_mode(g, [&](std::size_t flat, int m0, int m1, int m2) {
        const double k2 = k0 * k0 * (1.0 * m0 * m0 + 1.0 * m1 * m1 + 1.0 * m2 * m2);
        for (int c = 0; c < f.components(); ++c) out.at(c, flat) = -k2 * f.at(c, flat);
    });
    return out;
}

RealField gradient(const RealField& f) { return detail::fft_inverse_real(gradient_spec(fft_forward(f))); }
RealField divergence(const RealField& u) { return detail::fft_inverse_real(divergence_spec(fft_forward(u))); }
RealField laplacian(const RealField& f) { return detail::fft_inverse_real(laplacian_spec(fft_forward(f))); }

RealField advect(const RealField& v, const RealField& a) {
    const Grid& g = a.grid();
    if (v.components() != g.dim()) throw InvalidInput("advect: velocity must be a vector field");
    SpectralField ah = fft_forward(a);
    RealField out(g, a.components());
    for (int c = 0; c < a.components(); ++c) {
        SpectralField comp(g, 1);
        auto dst = comp.component(0);
        auto src = ah.component(c);
        std::copy(src.begin(), src.end(), dst.begin());
        RealField grad_c = detail::fft_inverse_real(gradient_spec(comp));
        auto oc = out.component(c);
        for (int d = 0; d < g.dim(); ++d) {
            auto vd = v.component(d);
            auto gd = grad_c.component(d);
            for (std::size_t i = 0; i < oc.size(); ++i) oc[i] += vd[i] * gd[i];
        }
    }
    return dealias(out);
}

RealField inverse_laplacian_gradient(const RealField& f, double mean_tolerance, bool* warned) {
    if (f.components() != 1) throw InvalidInput("inverse_laplacian_gradient: scalar expected");
    const Grid& g = f.grid();
    const double k0 = g.fundamental();
    SpectralField fh = fft_forward(f);
    const double dc = std::abs(fh.at(0, 0));
    if (warned) *warned = dc > mean_tolerance;
    SpectralField out(g, g.dim());
    auto src = fh.component(0);
    for_each_mode(g, [&](std::size_t flat, int m0, int m1, int m2) {
        const double k2 = k0 * k0 * (1.0 * m0 * m0 + 1.0 * m1 * m1 + 1.0 * m2 * m2);
        const int m[3] = {m0, m1, m2};
        for (int d = 0; d < g.dim(); ++d) {
            if (k2 == 0.0)
                out.at(d, flat) = 0.0;
            else
                out.at(d, flat) = std::complex<double>(0.0, 1.0) * (k0 * m[d]) / (-k2) * src[flat];
        }
    });
    return detail::fft_inverse_real(out);
}

RealField inverse_laplacian(const RealField& f, double mean_tolerance, bool* warned) {
    if (f.components() != 1) throw InvalidInput("inverse_laplacian: scalar expected");
    const Grid& g = f.grid();
    const double k0 = g.fundamental();
    SpectralField fh = fft_forward(f);
    const double dc = std::abs(fh.at(0, 0));
    if (warned) *warned = dc > mean_tolerance;
    for_each_mode(g, [&](std::size_t flat, int m0, int m1, int m2) {
        const double k2 = k0 * k0 * (1.0 * m0 * m0 + 1.0 * m1 * m1 + 1.0 * m2 * m2);
        fh.at(0, flat) = k2 == 0.0 ? 0.0 : fh.at(0, flat) / (-k2);
    });
    return detail::fft_inverse_real(fh);
}

SpectralField leray_type_projection_spec(const SpectralField& u) {
    const Grid& g = u.grid();
    if (u.components() != g.dim()) throw InvalidInput("projection: vector field expected");
    SpectralField out(g, g.dim());
    for_each_mode(g, [&](std::size_t flat, int m0, int m1, int m2) {
        const double m[3] = {double(m0), double(m1), double(m2)};
        const double m2n = m[0] * m[0] + m[1] * m[1] + m[2] * m[2];
        if (m2n == 0.0) {
            for (int d = 0; d < g.dim(); ++d) out.at(d, flat) = 0.0;
            return;
        }
        std::complex<double> dot = 0.0;
        for (int d = 0; d < g.dim(); ++d) dot += m[d] * u.at(d, flat);
        for (int d = 0; d < g.dim(); ++d) out.at(d, flat) = m[d] * dot / m2n;
    });
    return out;
}

RealField leray_type_projection(const RealField& u) {
    return detail::fft_inverse_real(leray_type_projection_spec(fft_forward(u)));
}

double curl_l2_norm(const RealField& u) {
    const Grid& g = u.grid();
    if (u.components() != g.dim() || g.dim() < 2)
        throw InvalidInput("curl: 2D or 3D vector field expected");
    const double k0 = g.fundamental();
    SpectralField uh = fft_forward(u);
    double s = 0.0;
    for_each_mode(g, [&](std::size_t flat, int m0, int m1, int m2) {
        const std::complex<double> iv(0.0, 1.0);
        const double k[3] = {k0 * m0, k0 * m1, k0 * m2};
        if (g.dim() == 2) {
            s += std::norm(iv * k[0] * uh.at(1, flat) - iv * k[1] * uh.at(0, flat));
        } else {
            s += std::norm(iv * k[1] * uh.at(2, flat) - iv * k[2] * uh.at(1, flat));
            s += std::norm(iv * k[2] * uh.at(0, flat) - iv * k[0] * uh.at(2, flat));
            s += std::norm(iv * k[0] * uh.at(1, flat) - iv * k[1] * uh.at(0, flat));
        }
    });
    return std::sqrt(g.volume() * s);
}

double l2_norm(const RealField& f) {
    double s = 0.0;
    for (int c = 0; c < f.components(); ++c)
        for (double v : f.component(c)) s += v * v;
    return std::sqrt(f.grid().cell_volume() * s);
}

RealField refine_to(const RealField& f, const Grid& fine) {
    const Grid& g = f.grid();
    if (fine.dim() != g.dim() || fine.box_length() != g.box_length() ||
        fine.points_per_axis() < g.points_per_axis())
        throw InvalidInput("refine_to: incompatible target grid");
    SpectralField src = fft_forward(f);
    SpectralField dst(fine, f.components());
    const int n_src = g.points_per_axis();
    // Map each coarse mode slot to the fine slot with the same signed index.
    for_each_mode(g, [&](std::size_t flat_src, int m0, int m1, int m2) {
        const int n_dst = fine.points_per_axis();
        auto pos = [&](int m) { return m >= 0 ? m : m + n_dst; };
        // Skip the coarse Nyquist plane; it has no unique signed counterpart.
        if (m0 == n_src / 2 || m1 == n_src / 2 || m2 == n_src / 2) return;
        std::size_t flat_dst = pos(m0);
        if (fine.dim() >= 2) flat_dst = flat_dst * n_dst + pos(m1);
        if (fine.dim() >= 3) flat_dst = flat_dst * n_dst + pos(m2);
        for (int c = 0; c < f.components(); ++c) dst.at(c, flat_dst) = src.at(c, flat_src);
    });
    return detail::fft_inverse_real(dst);
}

}  // namespace eplab

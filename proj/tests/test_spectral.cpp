// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "eplab/field_io.hpp"
#include "eplab/operators.hpp"
#include "eplab/random_fields.hpp"

using namespace eplab;

namespace {

// Independent oracle: quadratic-cost discrete Fourier sum, no FFT machinery.
SpectralField direct_dft(const RealField& f) {
    const Grid& g = f.grid();
    SpectralField out(g, f.components());
    const double norm = 1.0 / static_cast<double>(g.total_points());
    for (int c = 0; c < f.components(); ++c) {
        for_each_mode(g, [&](std::size_t kflat, int m0, int m1, int m2) {
            std::complex<double> acc = 0.0;
            const double k0 = g.fundamental();
            for_each_point(g, [&](std::size_t x, double x0, double x1, double x2) {
                const double ph = k0 * (m0 * x0 + m1 * x1 + m2 * x2);
                acc += f.at(c, x) * std::complex<double>(std::cos(ph), -std::sin(ph));
            });
            out.at(c, kflat) = acc * norm;
        });
    }
    return out;
}

RealField tone(const Grid& g, int mx, int my, double amp = 1.0) {
    RealField f(g, 1);
    auto d = f.component(0);
    const double k0 = g.fundamental();
    for_each_point(g, [&](std::size_t i, double x, double y, double) {
        d[i] = amp * std::cos(k0 * (mx * x + my * y));
    });
    return f;
}

}  // namespace

TEST_CASE("forward transform matches the direct Fourier sum") {
    Grid g(2, 8, kTwoPi);
    RealField f = random_bandlimited_field(g, -1.0, 7);
    SpectralField fast = fft_forward(f);
    SpectralField slow = direct_dft(f);
    double worst = 0.0;
    for_each_mode(g, [&](std::size_t i, int, int, int) {
        worst = std::max(worst, std::abs(fast.at(0, i) - slow.at(0, i)));
    });
    CHECK(worst < 1e-13);
}

TEST_CASE("constant field transforms to a pure zero mode") {
    Grid g(2, 16, kTwoPi);
    RealField f(g, 1, 3.25);
    SpectralField F = fft_forward(f);
    CHECK(F.at(0, 0).real() == doctest::Approx(3.25).epsilon(1e-14));
    double off = 0.0;
    for_each_mode(g, [&](std::size_t i, int m0, int m1, int) {
        if (m0 != 0 || m1 != 0) off = std::max(off, std::abs(F.at(0, i)));
    });
    CHECK(off < 1e-13);
}

TEST_CASE("single cosine excites exactly the conjugate mode pair") {
    Grid g(1, 32, 4.0);
    RealField f = tone(g, 1, 0);
    SpectralField F = fft_forward(f);
    int nonzero = 0;
    for_each_mode(g, [&](std::size_t i, int m0, int, int) {
        if (std::abs(F.at(0, i)) > 1e-12) {
            ++nonzero;
            CHECK(std::abs(m0) == 1);
            CHECK(F.at(0, i).real() == doctest::Approx(0.5).epsilon(1e-12));
        }
    });
    CHECK(nonzero == 2);
}

TEST_CASE("round trip reproduces a random field to 1e-12") {
    Grid g(2, 64, kTwoPi);
    RealField f = random_bandlimited_field(g, -2.0, 11);
    RealField back = fft_inverse(fft_forward(f));
    back -= f;
    CHECK(back.max_abs() < 1e-12 * f.max_abs());
}

TEST_CASE("non-finite samples are rejected") {
    Grid g(1, 8, 1.0);
    RealField f(g, 1);
    f.at(0, 3) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(fft_forward(f), InvalidInput);
}

TEST_CASE("inverse transform handles trivial spectra and rejects asymmetry") {
    Grid g(2, 16, kTwoPi);
    SpectralField F(g, 1);
    CHECK(fft_inverse(F).max_abs() == 0.0);

    F.at(0, 0) = 2.5;  // DC only
    RealField c = fft_inverse(F);
    CHECK(c.at(0, 5) == doctest::Approx(2.5).epsilon(1e-14));

    // sin tone spectrum: F(+k) = -i/2, F(-k) = +i/2
    SpectralField S(g, 1);
    const int n = g.points_per_axis();
    S.at(0, 1 * n + 0) = std::complex<double>(0.0, -0.5);
    S.at(0, static_cast<std::size_t>(n - 1) * n) = std::complex<double>(0.0, 0.5);
    RealField s = fft_inverse(S);
    double worst = 0.0;
    for_each_point(g, [&](std::size_t i, double x, double, double) {
        worst = std::max(worst, std::abs(s.at(0, i) - std::sin(x)));
    });
    CHECK(worst < 1e-12);

    SpectralField bad(g, 1);
    bad.at(0, 1) = 1.0;  // no conjugate partner
    CHECK_THROWS_AS(fft_inverse(bad), InvalidInput);
}

TEST_CASE("multiplier application: identity, derivative on a tone, laplacian") {
    Grid g(2, 32, kTwoPi);
    RealField f = random_bandlimited_field(g, -1.0, 3);
    SpectralField F = fft_forward(f);

    SpectralField same = apply_multiplier(F, [](const std::array<double, 3>&) {
        return std::complex<double>(1.0, 0.0);
    });
    RealField diff = fft_inverse(same) - f;
    CHECK(diff.max_abs() < 1e-13);

    RealField t = tone(g, 3, 0);
    SpectralField dT = apply_multiplier(fft_forward(t), [](const std::array<double, 3>& k) {
        return std::complex<double>(0.0, k[0]);
    });
    RealField dt_field = fft_inverse(dT);
    double worst = 0.0;
    for_each_point(g, [&](std::size_t i, double x, double, double) {
        worst = std::max(worst, std::abs(dt_field.at(0, i) + 3.0 * std::sin(3.0 * x)));
    });
    CHECK(worst < 1e-12);

    RealField lap = laplacian(tone(g, 1, 0));
    RealField expect = tone(g, 1, 0, -1.0);
    RealField ldiff = lap - expect;
    CHECK(ldiff.max_abs() < 1e-12);

    CHECK_THROWS_AS(apply_multiplier(F,
                                     [](const std::array<double, 3>& k) {
                                         return std::complex<double>(1.0 / (k[0] * k[0] + k[1] * k[1]), 0.0);
                                     }),
                    InvalidInput);  // singular at k = 0
}

TEST_CASE("differential operator identities") {
    Grid g(2, 64, kTwoPi);
    CHECK(gradient(RealField(g, 1, 4.0)).max_abs() < 1e-13);

    RealField f = random_bandlimited_field(g, -2.0, 5);
    RealField lhs = divergence(gradient(f));
    RealField rhs = laplacian(f);
    RealField diff = lhs - rhs;
    CHECK(diff.max_abs() < 1e-12 * std::max(rhs.max_abs(), 1.0));
}

TEST_CASE("smoothing multipliers commute with differentiation") {
    Grid g(2, 32, kTwoPi);
    RealField f = random_bandlimited_field(g, -1.0, 17);
    auto smooth = [](const SpectralField& F) {
        return apply_multiplier(F, [](const std::array<double, 3>& k) {
            const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
            return std::complex<double>(std::exp(-0.01 * k2), 0.0);
        });
    };
    RealField a = fft_inverse(gradient_spec(smooth(fft_forward(f))));
    RealField b = fft_inverse(smooth(gradient_spec(fft_forward(f))));
    RealField diff = a - b;
    CHECK(diff.max_abs() < 1e-12 * std::max(a.max_abs(), 1e-300));
}

TEST_CASE("inverse laplacian gradient inverts divergence on mean-free data") {
    Grid g(2, 64, kTwoPi);
    CHECK(inverse_laplacian_gradient(RealField(g, 1)).max_abs() == 0.0);

    RealField f = tone(g, 2, 1);
    RealField E = inverse_laplacian_gradient(f);
    RealField div_back = divergence(E) - f;
    CHECK(div_back.max_abs() < 1e-12);

    bool warned = false;
    RealField c(g, 1, 1.0);
    RealField out = inverse_laplacian_gradient(c, 1e-10, &warned);
    CHECK(out.max_abs() < 1e-13);
    CHECK(warned);

    // random mean-free field: divergence recovers it
    RealField r = random_bandlimited_field(g, -2.0, 23);
    RealField rr = divergence(inverse_laplacian_gradient(r)) - r;
    CHECK(rr.max_abs() < 1e-12 * r.max_abs());
}

TEST_CASE("curl-free projection: identity on gradients, kernel on solenoidal tones, idempotent") {
    Grid g(2, 64, kTwoPi);
    RealField f = random_bandlimited_field(g, -2.0, 31);
    RealField grad_f = gradient(f);
    RealField p = leray_type_projection(grad_f);
    RealField diff = p - grad_f;
    CHECK(diff.max_abs() < 1e-12 * std::max(grad_f.max_abs(), 1e-300));

    // divergence-free tone: u = (-sin(y), 0)
    RealField u(g, 2);
    auto ux = u.component(0);
    for_each_point(g, [&](std::size_t i, double, double y, double) { ux[i] = -std::sin(y); });
    CHECK(leray_type_projection(u).max_abs() < 1e-13);

    RealField v = random_bandlimited_field(g, -1.0, 37, 2);
    RealField once = leray_type_projection(v);
    RealField twice = leray_type_projection(once);
    RealField idem = twice - once;
    CHECK(idem.max_abs() < 1e-12 * std::max(once.max_abs(), 1e-300));
}

TEST_CASE("Parseval holds for an ensemble of random fields") {
    Grid g(2, 32, kTwoPi);
    for (int i = 0; i < 100; ++i) {
        RealField f = random_bandlimited_field(g, ensemble_slope(i), 1000 + i);
        const double phys = l2_norm(f);
        const double spec = spectral_l2_norm(fft_forward(f));
        CHECK(std::abs(phys - spec) < 1e-12 * phys);
    }
}

TEST_CASE("band-limited products are exact: dealiasing is idempotent") {
    Grid g(2, 32, kTwoPi);
    RealField f = random_bandlimited_field(g, -1.0, 41);
    RealField once = dealias(f);
    RealField diff = once - f;
    CHECK(diff.max_abs() < 1e-13);  // generator already band-limits
    RealField prod = multiply_dealiased(f, f);
    RealField prod2 = dealias(prod);
    RealField pdiff = prod2 - prod;
    CHECK(pdiff.max_abs() < 1e-13 * std::max(prod.max_abs(), 1e-300));
}

TEST_CASE("snapshot files round-trip bit-exactly") {
    Grid g(2, 16, 3.0);
    RealField f = random_bandlimited_field(g, -1.0, 53, 2);
    const auto path = std::filesystem::temp_directory_path() / "eplab_snap_test.fld";
    write_field_snapshot(path, f, "u", 0.125);
    FieldSnapshot snap = read_field_snapshot(path);
    CHECK(snap.name == "u");
    CHECK(snap.time == 0.125);
    CHECK(snap.field.grid() == g);
    CHECK(snap.field.raw() == f.raw());
    std::filesystem::remove(path);
}

TEST_CASE("spectral refinement embeds a coarse field exactly") {
    Grid coarse(2, 32, kTwoPi);
    Grid fine(2, 64, kTwoPi);
    RealField f = random_bandlimited_field(coarse, -2.0, 61);
    RealField F = refine_to(f, fine);
    // same function: values agree at coincident sample points
    double worst = 0.0;
    const int nc = coarse.points_per_axis();
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j) {
            const double a = f.at(0, static_cast<std::size_t>(i) * nc + j);
            const double b = F.at(0, (static_cast<std::size_t>(i) * 2) * 64 + 2 * j);
            worst = std::max(worst, std::abs(a - b));
        }
    CHECK(worst < 1e-12);
    CHECK(std::abs(l2_norm(F) - l2_norm(f)) < 1e-12);
}

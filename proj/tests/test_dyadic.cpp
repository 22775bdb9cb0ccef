// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "eplab/dyadic.hpp"
#include "eplab/random_fields.hpp"

using namespace eplab;

namespace {

RealField tone(const Grid& g, int mx, int my) {
    RealField f(g, 1);
    auto d = f.component(0);
    const double k0 = g.fundamental();
    for_each_point(g, [&](std::size_t i, double x, double y, double) {
        d[i] = std::cos(k0 * (mx * x + my * y));
    });
    return f;
}

}  // namespace

TEST_CASE("ladder depth and cutoff support") {
    Grid g(2, 128, kTwoPi);
    DyadicPartition P(g);
    // largest q with (8/3) 2^q <= (2/3) * 64
    CHECK(P.q_max() == 4);
    CHECK(DyadicPartition::phi(0.5) == 0.0);
    CHECK(DyadicPartition::phi(3.0) == 0.0);
    CHECK(DyadicPartition::chi(0.0) == 1.0);
    CHECK(DyadicPartition::chi(0.75) == 1.0);
    CHECK(DyadicPartition::chi(4.0 / 3.0) == 0.0);
    // coarsest admissible grid still hosts q = 0
    CHECK(DyadicPartition(Grid(2, 8, kTwoPi)).q_max() == 0);
}

TEST_CASE("partition sums to one on every retained mode") {
    for (int n : {32, 128}) {
        Grid g(2, n, kTwoPi);
        DyadicPartition P(g);
        double worst = 0.0;
        for_each_mode(g, [&](std::size_t, int m0, int m1, int) {
            const double xi = std::hypot(double(m0), double(m1));
            if (xi > g.band_radius()) return;
            double s = DyadicPartition::chi(xi);
            for (int q = 0; q <= P.q_max(); ++q) s += DyadicPartition::phi(std::ldexp(xi, -q));
            worst = std::max(worst, std::abs(s - 1.0));
        });
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("block operators select the shells predicted by the symbols") {
    Grid g(2, 128, kTwoPi);
    DyadicPartition P(g);
    RealField f = tone(g, 4, 0);  // xi = 4
    for (int q = -1; q <= P.q_max(); ++q) {
        const double predicted = DyadicPartition::block_symbol(q, 4.0);
        const double got = l2_norm(delta_q(f, q, P));
        if (predicted == 0.0)
            CHECK(got < 1e-13);
        else
            CHECK(got == doctest::Approx(predicted * l2_norm(f)).epsilon(1e-12));
    }
    // a tone meets at most two adjacent shells (plus possibly the ball)
    int hits = 0;
    for (int q = 0; q <= P.q_max(); ++q)
        if (DyadicPartition::block_symbol(q, 4.0) > 0.0) ++hits;
    CHECK(hits <= 2);
}

TEST_CASE("constants live entirely in the low-frequency ball") {
    Grid g(2, 64, kTwoPi);
    DyadicPartition P(g);
    RealField c(g, 1, 2.0);
    for (int q = 0; q <= P.q_max(); ++q) CHECK(delta_q(c, q, P).max_abs() < 1e-13);
    RealField ball = delta_q(c, -1, P);
    RealField diff = ball - c;
    CHECK(diff.max_abs() < 1e-13);
    for (int q = 0; q <= P.q_max() + 2; ++q) {
        RealField sdiff = s_q(c, q, P) - c;
        CHECK(sdiff.max_abs() < 1e-13);
    }
}

TEST_CASE("low-pass cutoffs telescope the blocks") {
    Grid g(2, 64, kTwoPi);
    DyadicPartition P(g);
    RealField f = random_bandlimited_field(g, -1.0, 5);

    RealField s0 = s_q(f, 0, P) - delta_q(f, -1, P);
    CHECK(s0.max_abs() < 1e-13);

    for (int q = 1; q <= P.q_max() + 1; ++q) {
        RealField sum(g, 1);
        for (int p = -1; p <= q - 1; ++p) sum += delta_q(f, p, P);
        RealField diff = s_q(f, q, P) - sum;
        CHECK(diff.max_abs() < 1e-12 * std::max(f.max_abs(), 1e-300));
    }

    RealField full = s_q(f, P.q_max() + 2, P) - f;
    CHECK(full.max_abs() < 1e-12 * f.max_abs());
    CHECK_THROWS_AS(s_q(f, -1, P), InvalidInput);
    CHECK_THROWS_AS(delta_q(f, P.q_max() + 1, P), InvalidInput);
}

TEST_CASE("decomposition reconstructs band-limited fields") {
    Grid g(2, 128, kTwoPi);
    DyadicPartition P(g);

    DyadicDecomposition z = decompose(RealField(g, 1), P);
    for (auto& [q, piece] : z.blocks) CHECK(piece.max_abs() == 0.0);

    for (int i = 0; i < 5; ++i) {
        RealField f = random_bandlimited_field(g, ensemble_slope(i), 100 + i);
        DyadicDecomposition d = decompose(f, P);
        CHECK(d.blocks.size() == static_cast<std::size_t>(P.q_max() + 2));
        RealField sum(g, 1);
        for (auto& [q, piece] : d.blocks) sum += piece;
        sum -= f;
        CHECK(sum.max_abs() < 1e-12 * f.max_abs());
    }
}

TEST_CASE("block spectra vanish outside their shells") {
    Grid g(2, 64, kTwoPi);
    DyadicPartition P(g);
    RealField f = random_bandlimited_field(g, -1.0, 9);
    for (int q = -1; q <= P.q_max(); ++q) {
        SpectralField B = fft_forward(delta_q(f, q, P));
        double outside = 0.0;
        for_each_mode(g, [&](std::size_t i, int m0, int m1, int) {
            const double xi = std::hypot(double(m0), double(m1));
            const bool in_support =
                q == -1 ? xi <= 4.0 / 3.0
                        : xi >= 0.75 * std::ldexp(1.0, q) && xi <= (8.0 / 3.0) * std::ldexp(1.0, q);
            if (!in_support) outside = std::max(outside, std::abs(B.at(0, i)));
        });
        CHECK(outside < 1e-14);
    }
}

TEST_CASE("block compositions annihilate at distance two") {
    Grid g(2, 128, kTwoPi);
    DyadicPartition P(g);
    RealField f = random_bandlimited_field(g, -2.0, 13);
    AlmostOrthReport rep = check_almost_orthogonality(f, P);
    CHECK(rep.max_pair_residual < 1e-12);
    CHECK(rep.max_product_residual < 1e-12);

    // negative control: adjacent blocks overlap
    SpectralField F = fft_forward(f);
    double adjacent = 0.0;
    for (int q = 0; q < P.q_max(); ++q)
        adjacent = std::max(adjacent,
                            spectral_l2_norm(delta_q(delta_q(F, q, P), q + 1, P)) / l2_norm(f));
    CHECK(adjacent > 1e-6);

    AlmostOrthReport zero = check_almost_orthogonality(RealField(g, 1), P);
    CHECK(zero.max_pair_residual == 0.0);
    CHECK(zero.max_product_residual == 0.0);
}

TEST_CASE("derivative-to-scale block ratios stay pinched as the grid refines") {
    Grid coarse(2, 128, kTwoPi);
    Grid fine(2, 256, kTwoPi);
    DyadicPartition Pc(coarse), Pf(fine);
    for (int k : {1, 2}) {
        double sup_c = 0.0, inf_c = 1e300, sup_f = 0.0, inf_f = 1e300;
        for (int i = 0; i < 10; ++i) {
            BernsteinReport rc =
                check_bernstein(random_bandlimited_field(coarse, ensemble_slope(i), 200 + i), k, Pc);
            BernsteinReport rf =
                check_bernstein(random_bandlimited_field(fine, ensemble_slope(i), 300 + i), k, Pf);
            sup_c = std::max(sup_c, rc.sup_ratio);
            inf_c = std::min(inf_c, rc.inf_ratio);
            sup_f = std::max(sup_f, rf.sup_ratio);
            inf_f = std::min(inf_f, rf.inf_ratio);
        }
        CHECK(inf_c > 0.0);
        CHECK(std::isfinite(sup_c));
        CHECK(std::isfinite(sup_f));
        CHECK(std::abs(sup_f / sup_c - 1.0) < 0.25);
        CHECK(inf_f > 0.5 * inf_c);
    }
}

TEST_CASE("per-q energy table lands on disk") {
    Grid g(2, 64, kTwoPi);
    DyadicPartition P(g);
    RealField f = random_bandlimited_field(g, -1.0, 17);
    const auto path = std::filesystem::temp_directory_path() / "eplab_decomp.csv";
    write_decomposition_csv(path, f, P);
    std::ifstream in(path);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == P.q_max() + 3);  // header + one row per block
    std::filesystem::remove(path);
}

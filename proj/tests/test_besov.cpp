// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "eplab/besov.hpp"
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

TimeSeries constant_series(const RealField& f, double T, int n) {
    TimeSeries ts;
    for (int j = 0; j <= n; ++j) {
        ts.times.push_back(T * j / n);
        ts.fields.push_back(f);
    }
    return ts;
}

}  // namespace

TEST_CASE("Lp quadrature: constants, sup norms, Parseval agreement") {
    Grid g(2, 64, kTwoPi);
    RealField c(g, 1, -1.5);
    CHECK(lp_norm(c, 2.0) == doctest::Approx(1.5 * std::sqrt(g.volume())).epsilon(1e-13));
    CHECK(lp_norm(c, 1.0) == doctest::Approx(1.5 * g.volume()).epsilon(1e-13));
    CHECK(lp_norm(c, kInf) == doctest::Approx(1.5));

    RealField s = tone(g, 1, 0);
    CHECK(lp_norm(s, kInf) == doctest::Approx(1.0).epsilon(1e-10));

    for (int i = 0; i < 20; ++i) {
        RealField f = random_bandlimited_field(g, ensemble_slope(i), 50 + i);
        CHECK(std::abs(lp_norm(f, 2.0) - spectral_l2_norm(fft_forward(f))) < 1e-12);
    }
    CHECK_THROWS_AS(lp_norm(c, 0.5), InvalidInput);
}

TEST_CASE("norm of a constant comes from the ball block alone") {
    Grid g(2, 64, kTwoPi);
    DyadicPartition P(g);
    CHECK(besov_norm(RealField(g, 1), {1.5, 2.0, 1.0}, P).value == 0.0);
    for (double s : {0.5, 2.0}) {
        BesovNorm bn = besov_norm(RealField(g, 1, 3.0), {s, 2.0, 1.0}, P);
        // only q = -1 survives: 2^{-s} |c| V^{1/2}
        CHECK(bn.value ==
              doctest::Approx(std::pow(2.0, -s) * 3.0 * std::sqrt(g.volume())).epsilon(1e-12));
    }
}

TEST_CASE("norm of a single-shell tone has the closed form") {
    Grid g(2, 128, kTwoPi);
    DyadicPartition P(g);
    // |m| = 3 sits where phi(2^{-1} xi) = 1 and every other symbol vanishes
    RealField f = tone(g, 3, 0);
    const double s = 1.7;
    BesovNorm bn = besov_norm(f, {s, 2.0, 1.0}, P);
    CHECK(bn.value == doctest::Approx(std::pow(2.0, s) * lp_norm(f, 2.0)).epsilon(1e-12));
    for (const auto& [q, term] : bn.per_q)
        if (q != 1) CHECK(term < 1e-12);
}

TEST_CASE("homogeneity, triangle inequality, ell^r monotonicity") {
    Grid g(2, 64, kTwoPi);
    DyadicPartition P(g);
    const BesovParams bp{sigma_index(g), 2.0, 1.0};
    for (int i = 0; i < 10; ++i) {
        RealField f = random_bandlimited_field(g, ensemble_slope(i), 500 + i);
        RealField h = random_bandlimited_field(g, ensemble_slope(i + 1), 600 + i);
        const double nf = besov_norm(f, bp, P).value;
        RealField af = f;
        af *= -3.7;
        CHECK(besov_norm(af, bp, P).value == doctest::Approx(3.7 * nf).epsilon(1e-12));

        const double nh = besov_norm(h, bp, P).value;
        CHECK(besov_norm(f + h, bp, P).value <= nf + nh + 1e-10);

        const double r1 = besov_norm(f, {bp.s, 2.0, 1.0}, P).value;
        const double r2 = besov_norm(f, {bp.s, 2.0, 2.0}, P).value;
        const double ri = besov_norm(f, {bp.s, 2.0, kInf}, P).value;
        CHECK(r1 >= r2);
        CHECK(r2 >= ri);
    }
}

TEST_CASE("spectral fast path agrees with the block-by-block route") {
    Grid g(2, 64, kTwoPi);
    DyadicPartition P(g);
    for (int i = 0; i < 5; ++i) {
        RealField f = random_bandlimited_field(g, ensemble_slope(i), 700 + i);
        const double a = besov_norm(f, {1.3, 2.0, 1.0}, P).value;
        const double b = besov_norm_spectral(fft_forward(f), {1.3, 2.0, 1.0}, P).value;
        CHECK(std::abs(a - b) < 1e-12 * a);
    }
    CHECK_THROWS_AS(besov_norm_spectral(SpectralField(g, 1), {1.0, kInf, 1.0}, P), InvalidInput);
}

TEST_CASE("time-inside norms on constant-in-time series") {
    Grid g(2, 64, kTwoPi);
    DyadicPartition P(g);
    RealField f = random_bandlimited_field(g, -2.0, 800);
    const BesovParams bp{1.0, 2.0, 1.0};
    const double bn = besov_norm(f, bp, P).value;
    const double T = 0.7;
    TimeSeries ts = constant_series(f, T, 6);

    CHECK(chemin_lerner_norm(ts, bp, kInf, P) == doctest::Approx(bn).epsilon(1e-12));
    CHECK(chemin_lerner_norm(ts, bp, 1.0, P) == doctest::Approx(T * bn).epsilon(1e-12));

    TimeSeries single;
    single.times = {0.0};
    single.fields = {f};
    CHECK_THROWS_AS(chemin_lerner_norm(single, bp, 1.0, P), InvalidInput);
}

TEST_CASE("Minkowski orderings between time-inside and time-outside norms") {
    Grid g(2, 32, kTwoPi);
    DyadicPartition P(g);
    TimeSeries ts;
    const int n = 8;
    for (int j = 0; j <= n; ++j) {
        ts.times.push_back(0.1 * j);
        RealField f = random_bandlimited_field(g, -1.0, 900 + j);
        f *= 1.0 + 0.3 * std::sin(1.7 * j);
        ts.fields.push_back(std::move(f));
    }
    // r <= rho: inside >= outside ; r >= rho: inside <= outside
    const double in_a = chemin_lerner_norm(ts, {1.0, 2.0, 1.0}, kInf, P);
    const double out_a = time_outer_norm(ts, {1.0, 2.0, 1.0}, kInf, P);
    CHECK(in_a >= out_a * (1.0 - 1e-10));

    const double in_b = chemin_lerner_norm(ts, {1.0, 2.0, kInf}, 1.0, P);
    const double out_b = time_outer_norm(ts, {1.0, 2.0, kInf}, 1.0, P);
    CHECK(in_b <= out_b * (1.0 + 1e-10));
}

TEST_CASE("embedding ratios respect their exact bounds") {
    Grid g(2, 64, kTwoPi);
    DyadicPartition P(g);
    for (int i = 0; i < 100; ++i) {
        RealField f = random_bandlimited_field(g, ensemble_slope(i), 1000 + i);
        EmbeddingReport rep = check_embeddings(f, P);
        CHECK(rep.ratio_coarser_r <= 1.0 + 1e-12);
        CHECK(rep.ratio_lower_s <= 2.0 + 1e-12);
        CHECK(std::isfinite(rep.ratio_linf));
    }
}

TEST_CASE("sup-norm embedding constant is stable under refinement") {
    Grid coarse(2, 64, kTwoPi), fine(2, 128, kTwoPi);
    DyadicPartition Pc(coarse), Pf(fine);
    auto sup_ratio = [&](const Grid& g, const DyadicPartition& P, int seed) {
        double worst = 0.0;
        for (int i = 0; i < 30; ++i) {
            RealField f = random_bandlimited_field(g, ensemble_slope(i), seed + i);
            worst = std::max(worst, check_embeddings(f, P).ratio_linf);
        }
        return worst;
    };
    const double rc = sup_ratio(coarse, Pc, 1100);
    const double rf = sup_ratio(fine, Pf, 1200);
    CHECK(std::isfinite(rc));
    CHECK(std::abs(rf / rc - 1.0) < 0.3);
}

TEST_CASE("norm reports serialize with their per-block breakdown") {
    Grid g(2, 32, kTwoPi);
    DyadicPartition P(g);
    BesovNorm bn = besov_norm(random_bandlimited_field(g, -1.0, 1300), {1.0, 2.0, 1.0}, P);
    nlohmann::json j = to_json(bn);
    CHECK(j.at("value").get<double>() == bn.value);
    CHECK(j.at("per_q").size() == bn.per_q.size());
    CHECK(j.at("q_range")[1].get<int>() == P.q_max());

    const auto path = std::filesystem::temp_directory_path() / "eplab_norm.csv";
    write_norm_csv(path, bn);
    std::ifstream in(path);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == static_cast<int>(bn.per_q.size()) + 1);
    std::filesystem::remove(path);
}

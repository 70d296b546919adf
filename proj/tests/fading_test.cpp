#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include <dfnoma/fading.hpp>
#include <dfnoma/rng.hpp>
#include <dfnoma/specfun.hpp>

#include "support/test_stats.hpp"

using Catch::Approx;
using namespace dfnoma;

TEST_CASE("philox known-answer blocks", "[fading]") {
    const std::array<std::uint32_t, 4> zero = Philox4x32(0, 0).block(0);
    CHECK(zero[0] == 0x6627e8d5u);
    CHECK(zero[1] == 0xe169c58du);
    CHECK(zero[2] == 0xbc57ac4cu);
    CHECK(zero[3] == 0x9b00dbd8u);

    const std::uint64_t ones = 0xFFFFFFFFFFFFFFFFull;
    const std::array<std::uint32_t, 4> ff = Philox4x32(ones, ones).block(ones);
    CHECK(ff[0] == 0x408f276du);
    CHECK(ff[1] == 0x41c83b0eu);
    CHECK(ff[2] == 0xa20bc7c6u);
    CHECK(ff[3] == 0x6d5451fdu);
}

TEST_CASE("stream draws are frozen", "[fading]") {
    RngStream a(0x2a, 0);
    CHECK(a.next_u64() == 0x77f5493b9ceaf053ull);
    CHECK(a.next_u64() == 0x5742b3d712bf50adull);
    CHECK(a.next_u64() == 0x53ba6cfdfcdb2127ull);
    CHECK(a.next_u64() == 0x744e06fb838f5a6eull);

    RngStream b(0x2a, 1);
    CHECK(b.next_u64() == 0x2051e91302933769ull);
    CHECK(b.next_u64() == 0xb62c409c3b68b038ull);

    RngStream c(0x0123456789abcdefull, 0xfedcba9876543210ull);
    CHECK(c.next_u64() == 0xf69b5950aef2adf7ull);
    CHECK(c.next_u64() == 0x89b6573a3ceb44f4ull);

    RngStream d(0, 0);
    CHECK(d.u01() == Approx(0.88052019788861435).epsilon(1e-15));
    RngStream e(0x2a, 1);
    CHECK(e.u01() == Approx(0.12624985422241936).epsilon(1e-15));
}

TEST_CASE("identical stream ids replay identical sequences", "[fading]") {
    RngStream a(777, 3);
    RngStream b(777, 3);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u32() == b.next_u32());
    RngStream c(777, 3);
    RngStream d(777, 4);
    bool differ = false;
    for (int i = 0; i < 16 && !differ; ++i) differ = c.next_u32() != d.next_u32();
    CHECK(differ);
}

TEST_CASE("u01 stays inside the open unit interval", "[fading]") {
    RngStream rng(31337, 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.u01();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("distinct streams are uncorrelated", "[fading]") {
    RngStream a(2718, 1);
    RngStream b(2718, 2);
    std::vector<double> xs(100000);
    std::vector<double> ys(100000);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = a.u01();
        ys[i] = b.u01();
    }
    CHECK(std::abs(test_stats::correlation(xs, ys)) < 0.01);
}

TEST_CASE("awgn moments and distribution", "[fading]") {
    RngStream rng(5150, 0);
    std::vector<double> xs(200000);
    for (double& x : xs) x = awgn(rng);
    const auto m = test_stats::moments(xs);
    CHECK(m.mean == Approx(0.0).margin(3.0 / std::sqrt(static_cast<double>(xs.size()))));
    CHECK(m.variance == Approx(1.0).epsilon(0.01));
    CHECK(m.skewness == Approx(0.0).margin(0.02));
    const double dist =
        test_stats::ks_distance(xs, [](double x) { return 1.0 - q_func(x); });
    CHECK(dist < 1.628 / std::sqrt(static_cast<double>(xs.size())));
}

TEST_CASE("gamma_sample moments", "[fading]") {
    RngStream rng(424242, 0);
    const int n = 400000;
    std::vector<double> xs(n);

    for (double& x : xs) x = gamma_sample(2.0, 5.0, rng);
    auto m = test_stats::moments(xs);
    CHECK(m.mean == Approx(10.0).epsilon(0.01));
    CHECK(m.variance == Approx(50.0).epsilon(0.03));

    for (double& x : xs) x = gamma_sample(1.0, 2.0, rng);
    m = test_stats::moments(xs);
    CHECK(m.variance / (m.mean * m.mean) == Approx(1.0).epsilon(0.02));

    for (double& x : xs) x = gamma_sample(0.5, 2.0, rng);
    m = test_stats::moments(xs);
    CHECK(m.mean == Approx(1.0).epsilon(0.02));
    CHECK(m.variance == Approx(2.0).epsilon(0.03));
    CHECK(m.skewness == Approx(2.0 * std::sqrt(2.0)).epsilon(0.05));
}

TEST_CASE("gamma_sample distribution by Kolmogorov-Smirnov", "[fading]") {
    const int n = 100000;
    const double crit = 1.628 / std::sqrt(static_cast<double>(n));  // 1% level
    int stream = 0;
    for (double shape : {0.5, 1.0, 2.7}) {
        RngStream rng(987654321, static_cast<std::uint64_t>(stream++));
        const double scale = 1.7;
        std::vector<double> xs(n);
        for (double& x : xs) x = gamma_sample(shape, scale, rng);
        const double dist = test_stats::ks_distance(
            xs, [&](double x) { return test_stats::gamma_p(shape, x / scale); });
        INFO("shape " << shape << " ks " << dist);
        CHECK(dist < crit);
    }
}

TEST_CASE("gamma_sample contract", "[fading]") {
    RngStream rng(1, 1);
    CHECK_THROWS_AS(gamma_sample(0.49, 1.0, rng), std::domain_error);
    CHECK_THROWS_AS(gamma_sample(1.0, 0.0, rng), std::domain_error);
    CHECK_THROWS_AS(gamma_sample(1.0, -1.0, rng), std::domain_error);
    RngStream r1(99, 5);
    RngStream r2(99, 5);
    for (int i = 0; i < 200; ++i) REQUIRE(gamma_sample(0.8, 2.0, r1) == gamma_sample(0.8, 2.0, r2));
}

TEST_CASE("nakagami_gain has the requested mean power", "[fading]") {
    RngStream rng(13579, 0);
    const FadingParam fading(1.3, 3.0);
    const int n = 300000;
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = nakagami_gain(fading, rng);
        REQUIRE(g > 0.0);
        sum2 += g * g;
    }
    CHECK(sum2 / n == Approx(3.0).epsilon(0.02));

    // large m concentrates the envelope
    RngStream rng2(13579, 1);
    const FadingParam stiff(50.0, 1.0);
    std::vector<double> gs(50000);
    for (double& g : gs) g = nakagami_gain(stiff, rng2);
    const auto m = test_stats::moments(gs);
    CHECK(std::sqrt(m.variance) / m.mean < 0.085);  // ~ 1/sqrt(4 m)
}

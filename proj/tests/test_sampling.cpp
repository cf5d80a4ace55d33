#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <catch_amalgamated.hpp>

#include "hhsharp/counter_rng.hpp"
#include "hhsharp/sampling.hpp"

using namespace hhsharp;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

constexpr double kPi = std::numbers::pi;

double lebesgue_rate(int n)
{
    return lebesgue_ball_volume(HeisSpace(n), 1.0) / std::pow(2.0, 2 * n + 1);
}

}  // namespace

TEST_CASE("Philox4x32-10 known answers")
{
    // Random123 kat_vectors: philox4x32 10 rounds
    const auto zero = CounterRng::with_raw_key(0, 0).block({0, 0, 0, 0});
    CHECK(zero == CounterRng::Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    const auto ones = CounterRng::with_raw_key(0xffffffffu, 0xffffffffu)
                          .block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu});
    CHECK(ones == CounterRng::Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    const auto pi = CounterRng::with_raw_key(0xa4093822u, 0x299f31d0u)
                        .block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u});
    CHECK(pi == CounterRng::Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("splitmix64 reference values")
{
    // state 0 stepped once by the reference generator
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("uniforms lie in [0,1) and streams differ")
{
    const CounterRng a(42, 1);
    const CounterRng b(42, 2);
    const CounterRng c(43, 1);
    double sum = 0.0;
    int same_ab = 0;
    int same_ac = 0;
    for (std::uint64_t i = 0; i < 10000; ++i)
    {
        const double u = a.uniform(i, 0, 0);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        same_ab += u == b.uniform(i, 0, 0);
        same_ac += u == c.uniform(i, 0, 0);
    }
    CHECK_THAT(sum / 10000.0, WithinAbs(0.5, 3.0 * std::sqrt(1.0 / 12.0 / 10000.0)));
    CHECK(same_ab == 0);
    CHECK(same_ac == 0);
}

TEST_CASE("ball samples lie in the unit ball and are deterministic across thread counts")
{
    for (int n : {1, 2})
    {
        const HeisSpace space(n);
        const SampleBatch serial = mc_ball_sample(space, 5000, 11, 1);
        const SampleBatch threaded = mc_ball_sample(space, 5000, 11, 4);
        REQUIRE(serial.points.size() == 5000);
        CHECK(serial.points == threaded.points);
        CHECK(serial.attempts == threaded.attempts);
        CHECK(serial.acceptance_rate == threaded.acceptance_rate);
        for (const auto& x : serial.points)
        {
            REQUIRE(koranyi_norm(x) <= 1.0);
        }
        const SampleBatch sphere1 = mc_sphere_sample(space, 3000, 5, 1);
        const SampleBatch sphere3 = mc_sphere_sample(space, 3000, 5, 3);
        CHECK(sphere1.points == sphere3.points);
        for (const auto& x : sphere1.points)
        {
            REQUIRE_THAT(koranyi_norm(x), WithinRel(1.0, 1e-12));
        }
    }
    CHECK_THROWS_AS(mc_ball_sample(HeisSpace(1), 0, 1), DomainError);
}

TEST_CASE("acceptance rate matches the Lebesgue volume of the gauge ball")
{
    // n = 1: pi^2/16 = 0.61685 of the box [-1,1]^3
    CHECK_THAT(lebesgue_rate(1), WithinRel(kPi * kPi / 16.0, 1e-14));
    for (int n : {1, 2})
    {
        const SampleBatch batch = mc_ball_sample(HeisSpace(n), 100000, 3);
        const double se = batch.acceptance_standard_error();
        CHECK(std::abs(batch.acceptance_rate - lebesgue_rate(n)) <= 3.0 * se);
    }
}

TEST_CASE("ball samples: coordinate means vanish and |x| has CDF r^Q")
{
    const HeisSpace space(1);
    const std::size_t count = 40000;
    const SampleBatch batch = mc_ball_sample(space, count, 19);
    for (std::size_t k = 0; k < 3; ++k)
    {
        const Estimate m = sample_mean(batch, [k](const HeisPoint& x) { return x[k]; });
        CHECK(std::abs(m.value) <= 3.0 * m.error);
    }
    const Estimate inner = sample_mean(batch, [](const HeisPoint& x) { return koranyi_norm(x) <= 0.5 ? 1.0 : 0.0; });
    CHECK(std::abs(inner.value - 1.0 / 16.0) <= 3.0 * inner.error);

    // Kolmogorov-Smirnov against F(r) = r^Q, 1% critical value 1.628/sqrt(N)
    std::vector<double> radii;
    for (const auto& x : batch.points)
    {
        radii.push_back(koranyi_norm(x));
    }
    std::sort(radii.begin(), radii.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < count; ++i)
    {
        const double F = std::pow(radii[i], space.Q);
        ks = std::max({ks, std::abs(F - static_cast<double>(i) / count), std::abs(F - static_cast<double>(i + 1) / count)});
    }
    CHECK(ks <= 1.628 / std::sqrt(static_cast<double>(count)));

    // radius uncorrelated with a bounded angular statistic
    double sr = 0, sa = 0, srr = 0, saa = 0, sra = 0;
    for (const auto& x : batch.points)
    {
        const double r = koranyi_norm(x);
        const double a = std::tanh(dilate(1.0 / r, x)[2] * 3.0);
        sr += r;
        sa += a;
        srr += r * r;
        saa += a * a;
        sra += r * a;
    }
    const double N = static_cast<double>(count);
    const double cov = sra / N - (sr / N) * (sa / N);
    const double corr = cov / std::sqrt((srr / N - sr * sr / N / N) * (saa / N - sa * sa / N / N));
    CHECK(std::abs(corr) <= 3.0 / std::sqrt(N));
}

TEST_CASE("sphere samples: total mass and sign symmetry")
{
    const HeisSpace space(1);
    const SampleBatch sphere = mc_sphere_sample(space, 20000, 8);
    const Estimate one = sample_mean(sphere, [](const HeisPoint&) { return 1.0; });
    CHECK(space.omega_small * one.value == space.omega_small);
    CHECK_THAT(space.omega_small, WithinRel(4.0 * kPi * kPi, 1e-12));
    const Estimate theta1 = sample_mean(sphere, [](const HeisPoint& t) { return t[0]; });
    CHECK(std::abs(theta1.value) <= 3.0 * theta1.error);
}

TEST_CASE("hit-or-miss volume: binomial error and r^Q scaling")
{
    const HeisSpace space(2);
    for (double r : {0.5, 1.0, 2.0})
    {
        const Estimate v = mc_ball_volume(space, r, 100000, 5);
        CHECK(std::abs(v.value - lebesgue_ball_volume(space, r)) <= 3.0 * v.error);
    }
    CHECK_THROWS_AS(mc_ball_volume(space, -1.0, 10, 1), DomainError);
}

TEST_CASE("sample_mean uses Welford with an unbiased variance")
{
    SampleBatch batch;
    for (double v : {1.0, 2.0, 3.0, 4.0})
    {
        batch.points.push_back(HeisPoint{v, 0, 0});
    }
    const Estimate m = sample_mean(batch, [](const HeisPoint& x) { return x[0]; });
    CHECK(m.value == 2.5);
    CHECK_THAT(m.error, WithinRel(std::sqrt((5.0 / 3.0) / 4.0), 1e-14));
}

#include <cmath>
#include <numbers>

#include <catch_amalgamated.hpp>

#include "hhsharp/mixed_norm.hpp"
#include "hhsharp/profiles.hpp"
#include "oracles.hpp"

using namespace hhsharp;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

constexpr double kPi = std::numbers::pi;
const HeisSpace H1(1);
const QuadratureSpec kSpec = [] {
    QuadratureSpec s;
    s.rel_tol = 1e-10;
    return s;
}();

double sign_of_first(const HeisPoint& t)
{
    return t[0] >= 0.0 ? 1.0 : -1.0;
}

}  // namespace

TEST_CASE("MixedExponents validation and delta")
{
    const MixedExponents e(2.0, 4.0, 2.0);
    CHECK(e.delta == 0.25);
    CHECK_THROWS_AS(MixedExponents(1.0, 2.0, 2.0), DomainError);
    CHECK_THROWS_AS(MixedExponents(2.0, 0.5, 2.0), DomainError);
    CHECK_THROWS_AS(MixedExponents(2.0, 2.0, INFINITY), DomainError);
}

TEST_CASE("mixed_norm_radial examples")
{
    // (omega_4 / (p eps))^{1/2} = pi sqrt(200)
    CHECK_THAT(mixed_norm_radial(extremal_profile(0.01, 4.0, 2.0), 2.0, 2.0, H1, kSpec).value,
               WithinRel(kPi * std::sqrt(200.0), 1e-9));
    CHECK_THAT(mixed_norm_radial(exp_bump(1.0), 2.0, 2.0, H1, kSpec).value,
               WithinRel(2.0 * kPi * std::sqrt(0.375), 1e-9));
    CHECK(mixed_norm_radial(zero_profile(), 2.0, 2.0, H1, kSpec).value == 0.0);
    try
    {
        (void)mixed_norm_radial(power_profile(1.0), 2.0, 2.0, H1, kSpec);
        FAIL("expected a divergent norm");
    }
    catch (const DivergentIntegral& e)
    {
        CHECK(std::string(e.what()).find("divergent norm") != std::string::npos);
    }
}

TEST_CASE("mixed norm agrees with an independent radial oracle")
{
    // p = 3, pbar = 1.5, f = r e^{-2r} on H^2: omega_6^{2/3} (\int r^3 e^{-6r} r^5 dr)^{1/3}
    const HeisSpace H2(2);
    const double radial = std::tgamma(9.0) / std::pow(6.0, 9.0);
    const double want = std::pow(H2.omega_small, 1.0 / 1.5) * std::cbrt(radial);
    CHECK_THAT(mixed_norm_radial(exp_bump(2.0, 1.0), 3.0, 1.5, H2, kSpec).value, WithinRel(want, 1e-9));
}

TEST_CASE("property: scaling and absolute homogeneity")
{
    const oracle::Gen gen(12);
    for (std::uint64_t i = 0; i < 20; ++i)
    {
        const double lambda = gen.log_uniform(i, 0, 0.1, 10.0);
        const double p = gen.uniform(i, 1, 1.2, 6.0);
        const double pb = gen.uniform(i, 2, 1.2, 6.0);
        const double c = gen.uniform(i, 3, -5.0, 5.0);
        const RadialProfile f = mixture({{1.0, exp_bump(gen.uniform(i, 4, 0.5, 2.0))},
                                         {0.5, broken_power(0.3, -4.0 / p - 0.4)}});
        const double base = mixed_norm_radial(f, p, pb, H1, kSpec).value;
        CHECK_THAT(mixed_norm_radial(dilated(f, lambda), p, pb, H1, kSpec).value,
                   WithinRel(std::pow(lambda, -4.0 / p) * base, 1e-8));
        CHECK_THAT(mixed_norm_radial(scaled(f, c), p, pb, H1, kSpec).value, WithinRel(std::abs(c) * base, 1e-12));
        CHECK(base > 0.0);
    }
}

TEST_CASE("separable norms")
{
    const MonteCarloSpec mc{20000, 3};
    const double radial = mixed_norm_radial(exp_bump(1.0), 2.0, 2.0, H1, kSpec).value;
    const SeparableFunction one{exp_bump(1.0), [](const HeisPoint&) { return 1.0; }};
    const MixedNormEstimate a = mixed_norm_separable(one, 2.0, 2.0, H1, kSpec, mc);
    CHECK_THAT(a.value, WithinRel(radial, 1e-12));
    CHECK(a.standard_error == 0.0);

    const SeparableFunction pm{exp_bump(1.0), sign_of_first};
    CHECK_THAT(mixed_norm_separable(pm, 2.0, 2.0, H1, kSpec, mc).value, WithinRel(2.0 * kPi * std::sqrt(0.375), 1e-9));

    const SeparableFunction none{zero_profile(), sign_of_first};
    CHECK(mixed_norm_separable(none, 2.0, 2.0, H1, kSpec, mc).value == 0.0);

    // evaluating a separable function at a point goes through the gauge
    CHECK_THAT(pm(HeisPoint{-2.0, 0.0, 0.0}), WithinRel(-std::exp(-2.0), 1e-15));
    CHECK_THROWS_AS(pm(HeisPoint::origin(1)), DomainError);
}

TEST_CASE("radialize examples")
{
    const MonteCarloSpec mc{40000, 9};
    const Radialization r1 = radialize({exp_bump(1.0), [](const HeisPoint&) { return 1.0; }}, H1, mc);
    CHECK(r1.angular_mean == 1.0);
    CHECK(r1.profile(0.7) == std::exp(-0.7));

    const Radialization odd = radialize({exp_bump(1.0), [](const HeisPoint& t) { return t[0]; }}, H1, mc);
    CHECK(std::abs(odd.angular_mean) <= 3.0 * odd.standard_error);

    const Radialization c = radialize({exp_bump(1.0), [](const HeisPoint&) { return 2.5; }}, H1, mc);
    CHECK_THAT(c.profile(1.3), WithinRel(2.5 * std::exp(-1.3), 1e-15));
}

TEST_CASE("contraction of the radialization on random separable functions")
{
    const oracle::Gen gen(99);
    for (std::uint64_t i = 0; i < 6; ++i)
    {
        const double a = gen.uniform(i, 0, -1.0, 1.0);
        const double b = gen.uniform(i, 1, -1.0, 1.0);
        const double k = gen.uniform(i, 2, 0.5, 2.0);
        const SeparableFunction f{exp_bump(k),
                                  [a, b](const HeisPoint& t) { return 1.0 + a * t[0] + b * t[2] * t[1]; }};
        const MonteCarloSpec mc{20000, 100 + i};
        const Radialization g = radialize(f, H1, mc);
        const double lhs = mixed_norm_radial(g.profile, 2.0, 3.0, H1, kSpec).value;
        const double lhs_se = lhs * g.standard_error / std::abs(g.angular_mean);
        const MixedNormEstimate rhs = mixed_norm_separable(f, 2.0, 3.0, H1, kSpec, mc);
        CHECK(lhs <= rhs.value + 3.0 * std::hypot(lhs_se, rhs.standard_error));
    }
}

TEST_CASE("hardy radialization identity")
{
    const MonteCarloSpec mc{40000, 21};
    const SeparableFunction flat{exp_bump(1.0), [](const HeisPoint&) { return 1.0; }};
    const IdentityCheck c1 = hardy_radialization_identity_check(flat, H1, kSpec, mc, 1.0);
    // (4/r^4) \int_0^1 e^{-s} s^3 ds at r = 1
    const double want = 4.0 * (6.0 - 16.0 / std::exp(1.0));
    CHECK_THAT(c1.lhs, WithinRel(want, 1e-9));
    CHECK(c1.agrees());

    const SeparableFunction bumpy{exp_bump(1.0), [](const HeisPoint& t) { return 1.0 + 0.5 * t[0]; }};
    CHECK(hardy_radialization_identity_check(bumpy, H1, kSpec, mc, 1.0).agrees());

    const SeparableFunction nothing{zero_profile(), [](const HeisPoint& t) { return t[1]; }};
    const IdentityCheck c0 = hardy_radialization_identity_check(nothing, H1, kSpec, mc, 1.0);
    CHECK(c0.lhs == 0.0);
    CHECK(c0.rhs == 0.0);
    CHECK_THROWS_AS(hardy_radialization_identity_check(flat, H1, kSpec, mc, 0.0), DomainError);
}

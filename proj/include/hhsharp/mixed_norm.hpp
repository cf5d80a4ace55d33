#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "hhsharp/heis_geometry.hpp"
#include "hhsharp/operators.hpp"
#include "hhsharp/profiles.hpp"
#include "hhsharp/quadrature.hpp"
#include "hhsharp/sampling.hpp"

namespace hhsharp
{

/// (p, pbar_1, pbar_2) with delta = 1/pbar_2 - 1/pbar_1.
struct MixedExponents
{
    double p;
    double p_bar_1;
    double p_bar_2;
    double delta;

    MixedExponents(double p_, double p_bar_1_, double p_bar_2_)
        : p(p_), p_bar_1(p_bar_1_), p_bar_2(p_bar_2_), delta(1.0 / p_bar_2_ - 1.0 / p_bar_1_)
    {
        for (double e : {p, p_bar_1, p_bar_2})
        {
            if (!(e > 1.0) || !std::isfinite(e))
            {
                throw DomainError("MixedExponents: every exponent must lie in (1, inf), got "
                                  + std::to_string(e));
            }
        }
    }
};

/// f(r, theta) = radial(r) * angular(theta) with theta on the Koranyi unit sphere.
struct SeparableFunction
{
    RadialProfile radial;
    std::function<double(const HeisPoint&)> angular;

    double operator()(const HeisPoint& x) const
    {
        const double r = koranyi_norm(x);
        if (!(r > 0.0))
        {
            throw DomainError("SeparableFunction: undefined at the origin");
        }
        return radial(r) * angular(dilate(1.0 / r, x));
    }
};

/// Monte Carlo settings for the angular variable.
struct MonteCarloSpec
{
    std::size_t count = 100000;
    std::uint64_t seed = 42;
};

namespace detail
{

inline Estimate radial_lp(const RadialProfile& f, double p, const HeisSpace& space, const QuadratureSpec& spec)
{
    const RadialProfile integrand = abs_power(f, p);
    try
    {
        return integrate_radial(integrand, space, {0.0, kInf}, spec);
    }
    catch (const DivergentIntegral& e)
    {
        throw DivergentIntegral(std::string("divergent norm: ") + e.what());
    }
}

}  // namespace detail

/// Mixed radial-angular norm of a radial function:
///   omega_Q^{1/pbar} (\int_0^inf |f(r)|^p r^{Q-1} dr)^{1/p}.
inline Estimate mixed_norm_radial(const RadialProfile& f, double p, double p_bar, const HeisSpace& space,
                                  const QuadratureSpec& spec)
{
    if (!(p >= 1.0) || !(p_bar >= 1.0))
    {
        throw DomainError("mixed_norm_radial: exponents must be >= 1");
    }
    const Estimate radial = detail::radial_lp(f, p, space, spec);
    if (radial.value <= 0.0)
    {
        return {0.0, std::pow(radial.error, 1.0 / p) * std::pow(space.omega_small, 1.0 / p_bar)};
    }
    const double norm = std::pow(space.omega_small, 1.0 / p_bar) * std::pow(radial.value, 1.0 / p);
    return {norm, norm * radial.error / (p * radial.value)};
}

/// Norm with its Monte Carlo standard error kept apart from the quadrature error.
struct MixedNormEstimate
{
    double value = 0.0;
    double quadrature_error = 0.0;
    double standard_error = 0.0;
};

/// Mixed norm of a separable function. The angular factor
///   A = \int_{S} |h|^{pbar} d theta
/// is omega_Q times the sample mean of |h|^{pbar} on the sphere sampler.
inline MixedNormEstimate mixed_norm_separable(const SeparableFunction& f, double p, double p_bar,
                                              const HeisSpace& space, const QuadratureSpec& spec,
                                              const MonteCarloSpec& mc)
{
    if (!(p >= 1.0) || !(p_bar >= 1.0))
    {
        throw DomainError("mixed_norm_separable: exponents must be >= 1");
    }
    const SampleBatch sphere = mc_sphere_sample(space, mc.count, mc.seed);
    const Estimate mean = sample_mean(sphere, [&](const HeisPoint& theta) {
        return std::pow(std::abs(f.angular(theta)), p_bar);
    });
    const double angular_mass = space.omega_small * mean.value;
    const Estimate radial = detail::radial_lp(f.radial, p, space, spec);
    if (radial.value <= 0.0 || angular_mass <= 0.0)
    {
        return {};
    }
    const double norm = std::pow(angular_mass, 1.0 / p_bar) * std::pow(radial.value, 1.0 / p);
    return {norm, norm * radial.error / (p * radial.value),
            norm * mean.error / (p_bar * mean.value)};
}

/// Radialized function together with the sphere mean that produced it.
struct Radialization
{
    RadialProfile profile;
    double angular_mean = 0.0;
    double standard_error = 0.0;
};

/// g(x) = (1/omega_Q) \int_S f(delta_{|x|} theta) d theta. For separable f
/// this is radial(r) times the sphere mean of the angular factor.
inline Radialization radialize(const SeparableFunction& f, const HeisSpace& space, const MonteCarloSpec& mc)
{
    const SampleBatch sphere = mc_sphere_sample(space, mc.count, mc.seed);
    const Estimate mean = sample_mean(sphere, f.angular);
    return {scaled(f.radial, mean.value), mean.value, mean.error};
}

struct IdentityCheck
{
    double lhs = 0.0;  // H_h(radialize f)(r0), quadrature x sphere mean
    double lhs_standard_error = 0.0;
    double rhs = 0.0;  // direct Monte Carlo of H_h f over B(0, r0)
    double rhs_standard_error = 0.0;

    double combined_standard_error() const { return std::hypot(lhs_standard_error, rhs_standard_error); }
    bool agrees(double sigmas = 3.0) const
    {
        return std::abs(lhs - rhs) <= sigmas * combined_standard_error() + 1e-12 * std::max(1.0, std::abs(lhs));
    }
};

/// Compares H_h applied to the radialization with a direct ball average of f:
///   H_h f(x0) = E[f(delta_{r0} y)], y uniform in B(0,1), r0 = |x0|_h.
inline IdentityCheck hardy_radialization_identity_check(const SeparableFunction& f, const HeisSpace& space,
                                                        const QuadratureSpec& spec, const MonteCarloSpec& mc,
                                                        double r0)
{
    if (!(r0 > 0.0))
    {
        throw DomainError("hardy_radialization_identity_check: r0 must be positive");
    }
    const Radialization g = radialize(f, space, mc);
    const double hardy_radial = hardy(f.radial, space, spec)(r0);
    IdentityCheck out;
    out.lhs = hardy_radial * g.angular_mean;
    out.lhs_standard_error = std::abs(hardy_radial) * g.standard_error;

    // independent draw: shift the seed into the identity-check stream
    const std::uint64_t seed = splitmix64(mc.seed ^ static_cast<std::uint64_t>(RngStream::identity_check));
    const SampleBatch ball = mc_ball_sample(space, mc.count, seed);
    const Estimate direct = sample_mean(ball, [&](const HeisPoint& y) {
        const double rho = koranyi_norm(y);
        return f.radial(r0 * rho) * f.angular(dilate(1.0 / rho, y));
    });
    out.rhs = direct.value;
    out.rhs_standard_error = direct.error;
    return out;
}

}  // namespace hhsharp

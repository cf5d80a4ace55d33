#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hhsharp/counter_rng.hpp"
#include "hhsharp/heis_geometry.hpp"
#include "hhsharp/sampling.hpp"

// Randomized property suite for the group law and the gauge metric.

namespace hhsharp
{

/// Point `index` of a property suite: every coordinate uniform in [-10, 10].
/// `slot_base` separates the several points drawn per trial.
inline HeisPoint random_test_point(const CounterRng& rng, int n, std::uint64_t index, std::uint32_t slot_base)
{
    const std::size_t dim = 2 * static_cast<std::size_t>(n) + 1;
    std::vector<double> x(dim);
    for (std::size_t k = 0; k < dim; ++k)
    {
        x[k] = rng.uniform(index, slot_base, static_cast<std::uint32_t>(k), -10.0, 10.0);
    }
    return HeisPoint(std::move(x));
}

struct PropertyOutcome
{
    std::string name;
    std::size_t trials = 0;
    double worst = 0.0;  // largest observed error, in the units `tolerance` uses
    double tolerance = 0.0;
    std::size_t violations = 0;
    bool pass = false;
};

struct VolumeOutcome
{
    std::size_t count = 0;
    double estimate = 0.0;
    double standard_error = 0.0;
    double expected = 0.0;
    double z_score = 0.0;
    bool pass = false;
    double lebesgue_expected = 0.0;  // diagnostic only, does not gate `pass`
    double lebesgue_z_score = 0.0;
};

struct GeometryReport
{
    std::vector<PropertyOutcome> properties;
    VolumeOutcome volume;

    bool pass() const
    {
        return volume.pass
               && std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.pass; });
    }
};

struct GeometrySuiteConfig
{
    std::size_t algebra_trials = 10000;
    std::size_t triangle_trials = 100000;
    std::size_t volume_count = 1000000;
    std::uint64_t seed = 42;
};

namespace detail
{

template <class Err>
PropertyOutcome run_property(std::string name, std::size_t trials, double tolerance, const Err& error_of)
{
    PropertyOutcome out{std::move(name), trials, 0.0, tolerance, 0, false};
    for (std::size_t i = 0; i < trials; ++i)
    {
        const double e = error_of(static_cast<std::uint64_t>(i));
        out.worst = std::max(out.worst, e);
        if (!(e <= tolerance))
        {
            ++out.violations;
        }
    }
    out.pass = out.violations == 0;
    return out;
}

inline double max_abs_diff(const HeisPoint& a, const HeisPoint& b)
{
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        m = std::max(m, std::abs(a[k] - b[k]));
    }
    return m;
}

inline double max_abs(const HeisPoint& a)
{
    double m = 0.0;
    for (double v : a.coords())
    {
        m = std::max(m, std::abs(v));
    }
    return m;
}

}  // namespace detail

/// Associativity, inverse law, homogeneity, left-invariance, triangle
/// inequality and the Monte Carlo unit-ball volume against Omega_Q. The
/// volume is also compared with lebesgue_ball_volume for diagnosis.
inline GeometryReport run_geometry_suite(const HeisSpace& space, const GeometrySuiteConfig& cfg)
{
    const CounterRng rng(cfg.seed, static_cast<std::uint64_t>(RngStream::geometry));
    const int n = space.n;
    GeometryReport report;

    report.properties.push_back(detail::run_property("associativity", cfg.algebra_trials, 1e-12, [&](auto i) {
        const HeisPoint x = random_test_point(rng, n, i, 0);
        const HeisPoint y = random_test_point(rng, n, i, 1);
        const HeisPoint z = random_test_point(rng, n, i, 2);
        return detail::max_abs_diff(group_mul(group_mul(x, y), z), group_mul(x, group_mul(y, z)));
    }));

    report.properties.push_back(detail::run_property("inverse_law", cfg.algebra_trials, 1e-15, [&](auto i) {
        const HeisPoint x = random_test_point(rng, n, i, 3);
        return std::max(detail::max_abs(group_mul(x, group_inv(x))), detail::max_abs(group_mul(group_inv(x), x)));
    }));

    report.properties.push_back(detail::run_property("gauge_homogeneity", cfg.algebra_trials, 1e-12, [&](auto i) {
        const HeisPoint x = random_test_point(rng, n, i, 4);
        const double r = std::exp(rng.uniform(i, 5, 0, std::log(1e-3), std::log(1e3)));
        const double lhs = koranyi_norm(dilate(r, x));
        const double rhs = r * koranyi_norm(x);
        return std::abs(lhs - rhs) / rhs;
    }));

    report.properties.push_back(detail::run_property("left_invariance", cfg.algebra_trials, 1e-10, [&](auto i) {
        const HeisPoint z = random_test_point(rng, n, i, 6);
        const HeisPoint p = random_test_point(rng, n, i, 7);
        const HeisPoint q = random_test_point(rng, n, i, 8);
        const double base = heis_distance(p, q);
        return std::abs(heis_distance(group_mul(z, p), group_mul(z, q)) - base) / base;
    }));

    // worst = largest excess d(p,q) - d(p,x) - d(x,q); a violation exceeds the slack
    report.properties.push_back(detail::run_property("triangle_inequality", cfg.triangle_trials, 1e-12, [&](auto i) {
        const HeisPoint p = random_test_point(rng, n, i, 9);
        const HeisPoint q = random_test_point(rng, n, i, 10);
        const HeisPoint x = random_test_point(rng, n, i, 11);
        return heis_distance(p, q) - heis_distance(p, x) - heis_distance(x, q);
    }));

    const Estimate vol = mc_ball_volume(space, 1.0, cfg.volume_count, cfg.seed);
    VolumeOutcome& v = report.volume;
    v.count = cfg.volume_count;
    v.estimate = vol.value;
    v.standard_error = vol.error;
    v.expected = space.omega_big;
    v.z_score = vol.error > 0.0 ? (vol.value - v.expected) / vol.error : 0.0;
    v.pass = std::abs(vol.value - v.expected) <= 3.0 * vol.error;
    v.lebesgue_expected = lebesgue_ball_volume(space, 1.0);
    v.lebesgue_z_score = vol.error > 0.0 ? (vol.value - v.lebesgue_expected) / vol.error : 0.0;
    return report;
}

}  // namespace hhsharp

#pragma once

// Reference integrators for the tests. Deliberately share nothing with the
// library's Gauss-Kronrod code: double-exponential rules with fixed step,
// plus composite Simpson for smooth bounded integrands.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "hhsharp/counter_rng.hpp"
#include "hhsharp/heis_geometry.hpp"

namespace oracle
{

using Fn = std::function<double(double)>;

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Composite Simpson with `panels` (even) subintervals.
inline double simpson(const Fn& f, double a, double b, int panels = 20000)
{
    if (panels % 2)
    {
        ++panels;
    }
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i)
    {
        s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    }
    return s * h / 3.0;
}

/// tanh-sinh on [a, b]; endpoint abscissae are formed from their distance to
/// the endpoint so algebraic endpoint singularities are sampled accurately.
inline double tanh_sinh(const Fn& f, double a, double b, double h = 1.0 / 128.0, double t_max = 4.0)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = half * kHalfPi * f(mid);  // t = 0: weight pi/2
    for (double t = h; t <= t_max; t += h)
    {
        const double u = kHalfPi * std::sinh(t);
        const double e = std::exp(-2.0 * u);
        const double gap = 2.0 * e / (1.0 + e);  // 1 - tanh(u)
        const double ch = std::cosh(u);
        const double w = half * kHalfPi * std::cosh(t) / (ch * ch);
        const double left = a + half * gap;
        const double right = b - half * gap;
        if (!(w > 0.0))
        {
            break;
        }
        if (left > a)
        {
            sum += w * f(left);
        }
        if (right < b)
        {
            sum += w * f(right);
        }
    }
    return sum * h;
}

/// exp-sinh on [a, inf) for integrands decaying at least exponentially.
inline double exp_sinh(const Fn& f, double a, double h = 1.0 / 128.0, double t_lo = -4.5, double t_hi = 3.5)
{
    double sum = 0.0;
    for (double t = t_lo; t <= t_hi; t += h)
    {
        const double u = kHalfPi * std::sinh(t);
        const double x = std::exp(u);
        const double w = kHalfPi * std::cosh(t) * x;
        const double v = f(a + x);
        if (std::isfinite(v) && std::isfinite(w))
        {
            sum += w * v;
        }
    }
    return sum * h;
}

/// tanh-sinh over consecutive pieces [knots[i], knots[i+1]].
inline double piecewise(const Fn& f, const std::vector<double>& knots)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    {
        s += tanh_sinh(f, knots[i], knots[i + 1]);
    }
    return s;
}

/// Brute-force radial Hardy average: Q/r^Q \int_0^r f(s) s^{Q-1} ds, split at `knots` inside (0, r).
inline double hardy_at(const Fn& f, int Q, double r, std::vector<double> knots = {})
{
    std::vector<double> pts{0.0};
    for (double k : knots)
    {
        if (k > 0.0 && k < r)
        {
            pts.push_back(k);
        }
    }
    pts.push_back(r);
    const double integral = piecewise([&](double s) { return f(s) * std::pow(s, Q - 1); }, pts);
    return Q * integral / std::pow(r, Q);
}

/// Closed-form extremal ratio for the Hardy operator with pbar1 = pbar2:
///   ratio^p = (Q/(Q-a))^p * (pε) * \int_1^inf (r^{-a} - r^{-Q})^p r^{Q-1} dr,  a = Q/p + ε.
/// For p = 2 the last integral is 1/(2a-Q) - 2/a + 1/Q.
inline double hardy_extremal_ratio_p2(double Q, double eps)
{
    const double p = 2.0;
    const double a = Q / p + eps;
    const double tail = 1.0 / (2.0 * a - Q) - 2.0 / a + 1.0 / Q;
    return std::sqrt(std::pow(Q / (Q - a), 2.0) * p * eps * tail);
}

/// Uniform draw in [lo, hi] addressed by (stream, index, slot); the generator
/// used by the property tests.
struct Gen
{
    hhsharp::CounterRng rng;
    explicit Gen(std::uint64_t seed, std::uint64_t stream = 97) : rng(seed, stream) {}
    double uniform(std::uint64_t index, std::uint32_t slot, double lo, double hi) const
    {
        return rng.uniform(index, 0, slot, lo, hi);
    }
    double log_uniform(std::uint64_t index, std::uint32_t slot, double lo, double hi) const
    {
        return std::exp(uniform(index, slot, std::log(lo), std::log(hi)));
    }
    hhsharp::HeisPoint point(std::uint64_t index, std::uint32_t slot_base, int n, double box = 10.0) const
    {
        std::vector<double> x(2 * static_cast<std::size_t>(n) + 1);
        for (std::size_t k = 0; k < x.size(); ++k)
        {
            x[k] = rng.uniform(index, slot_base, static_cast<std::uint32_t>(k), -box, box);
        }
        return hhsharp::HeisPoint(std::move(x));
    }
};

}  // namespace oracle

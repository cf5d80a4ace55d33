#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hhsharp/errors.hpp"
#include "hhsharp/heis_geometry.hpp"

namespace hhsharp
{

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi] of the half line; hi may be +inf.
struct Interval
{
    double lo = 0.0;
    double hi = kInf;
};

/// A radial function r -> g(r) on (0, inf) with the decay metadata the
/// integrator needs to certify improper integrals:
///   |g(r)| = O(r^origin_exponent) as r -> 0+,
///   |g(r)| = O(r^tail_exponent)   as r -> inf.
/// Outside `support` the profile is identically zero and the matching
/// exponent is not consulted. +inf / -inf exponents mean "faster than any
/// power".
struct RadialProfile
{
    std::function<double(double)> eval;
    double origin_exponent = 0.0;
    double tail_exponent = 0.0;
    std::optional<Interval> support;
    std::vector<double> breakpoints;

    double operator()(double r) const
    {
        if (support && (r < support->lo || r > support->hi))
        {
            return 0.0;
        }
        return eval(r);
    }

    double support_lo() const { return support ? support->lo : 0.0; }
    double support_hi() const { return support ? support->hi : kInf; }
    bool reaches_origin() const { return support_lo() == 0.0; }
    bool reaches_infinity() const { return std::isinf(support_hi()); }

    /// Origin exponent as seen by integrals: +inf when the support stays away from 0.
    double effective_origin_exponent() const { return reaches_origin() ? origin_exponent : kInf; }
    /// Tail exponent as seen by integrals: -inf when the support is bounded.
    double effective_tail_exponent() const { return reaches_infinity() ? tail_exponent : -kInf; }
};

struct QuadratureSpec
{
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000;

    void validate() const
    {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        {
            throw DomainError("QuadratureSpec: tolerances must be strictly positive");
        }
        if (max_subdivisions < 1)
        {
            throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
        }
    }

    /// Same relative tolerance, absolute floor removed. Used for inner
    /// integrals whose magnitude can be arbitrarily small.
    QuadratureSpec relative_only() const
    {
        QuadratureSpec s = *this;
        s.abs_tol = std::numeric_limits<double>::min();
        return s;
    }
};

/// A value with an absolute error estimate.
struct Estimate
{
    double value = 0.0;
    double error = 0.0;
};

/// A bare integrand F with its own (not the profile's) power-law metadata:
/// F = O(r^origin_exponent) at 0 and O(r^tail_exponent) at infinity.
struct Integrand
{
    std::function<double(double)> f;
    double origin_exponent = 0.0;
    double tail_exponent = -kInf;
    std::vector<double> breakpoints;
};

namespace detail
{

// 21-point Gauss-Kronrod rule with its embedded 10-point Gauss rule.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478128, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651604};

struct Segment
{
    double a;
    double b;
    double value;
    double error;
    double abs_value;

    bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod21(const F& g, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = g(c);
    double kronrod = kWgk[10] * fc;
    double gauss = 0.0;
    double abs_sum = kWgk[10] * std::abs(fc);
    bool finite = std::isfinite(fc);
    for (std::size_t j = 0; j < 10; ++j)
    {
        const double dx = h * kXgk[j];
        const double f1 = g(c - dx);
        const double f2 = g(c + dx);
        finite = finite && std::isfinite(f1) && std::isfinite(f2);
        kronrod += kWgk[j] * (f1 + f2);
        abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1)
        {
            gauss += kWg[j / 2] * (f1 + f2);
        }
    }
    if (!finite)
    {
        throw Error("integrate: non-finite integrand value on [" + std::to_string(a) + ", "
                    + std::to_string(b) + "] (log scale)");
    }
    return {a, b, kronrod * h, std::abs(kronrod - gauss) * h, abs_sum * h};
}

// Largest number of decades the origin / tail search walks before switching
// from truncation to power-law extrapolation.
inline constexpr int kMaxDecades = 30;
inline const double kLogTen = std::log(10.0);

// F(r) * r^k evaluated without forming r^k on its own.
inline double times_power(double value, double r, double k)
{
    if (value == 0.0 || k == 0.0)
    {
        return value;
    }
    return std::copysign(std::exp(std::log(std::abs(value)) + k * std::log(r)), value);
}

}  // namespace detail

/// Adaptive integral of F over [lo, hi] with 0 <= lo < hi <= inf.
///
/// The integral is carried out in u = ln r (which also removes integrable
/// power singularities at 0) using global bisection of G10/K21 segments.
/// An infinite or zero endpoint is handled from the metadata: walking out a
/// decade at a time, the piece beyond r is bounded by 2|F(r)| r / |e + 1|;
/// once that bound is below max(abs_tol, rel_tol |I|)/10 on two consecutive
/// decades the rest is dropped. If 30 decades do not suffice the remainder is
/// extrapolated as a pure power law and the variation of F(r) r^{-e} between
/// the last two decades is charged to the error.
inline Estimate integrate(const Integrand& integrand, double lo, double hi, const QuadratureSpec& spec)
{
    spec.validate();
    if (!(lo >= 0.0) || !(hi > lo) || std::isnan(hi))
    {
        if (lo == hi && lo >= 0.0)
        {
            return {};
        }
        throw DomainError("integrate: need 0 <= lo < hi");
    }
    const double e0 = integrand.origin_exponent;
    const double einf = integrand.tail_exponent;
    const bool open_origin = (lo == 0.0);
    const bool open_tail = std::isinf(hi);
    if (open_tail && !(einf < -1.0))
    {
        throw DivergentIntegral("divergent integral: integrand tail exponent " + std::to_string(einf)
                                + " is not < -1");
    }
    if (open_origin && !(e0 > -1.0))
    {
        throw DivergentIntegral("divergent integral: integrand origin exponent " + std::to_string(e0)
                                + " is not > -1");
    }

    const auto& f = integrand.f;
    auto g = [&f](double u) {
        const double r = std::exp(u);
        const double v = f(r);
        return v == 0.0 ? 0.0 : v * r;
    };

    std::vector<double> cuts;
    for (double b : integrand.breakpoints)
    {
        if (b > 0.0 && std::isfinite(b))
        {
            cuts.push_back(std::log(b));
        }
    }
    std::sort(cuts.begin(), cuts.end());

    std::vector<detail::Segment> segments;
    double subtotal = 0.0;
    auto add_range = [&](double ua, double ub) {
        if (!(ub > ua))
        {
            return;
        }
        std::vector<double> knots{ua};
        for (double c : cuts)
        {
            if (c > ua && c < ub)
            {
                knots.push_back(c);
            }
        }
        knots.push_back(ub);
        for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        {
            const double len = knots[i + 1] - knots[i];
            const int pieces = std::max(1, static_cast<int>(std::ceil(len / detail::kLogTen - 1e-9)));
            for (int j = 0; j < pieces; ++j)
            {
                const double a = knots[i] + len * j / pieces;
                const double b = (j + 1 == pieces) ? knots[i + 1] : knots[i] + len * (j + 1) / pieces;
                segments.push_back(detail::gauss_kronrod21(g, a, b));
                subtotal += segments.back().value;
            }
        }
    };

    double body_lo = open_origin ? std::min(hi, 0.1) : lo;
    double body_hi = open_tail ? std::max(lo, 10.0) : hi;
    if (open_origin && open_tail)
    {
        body_lo = 0.1;
        body_hi = 10.0;
    }
    add_range(std::log(body_lo), std::log(body_hi));

    // Walks away from `start` (towards 0 when down, towards inf otherwise).
    auto walk = [&](double start, double exponent, bool down) -> Estimate {
        const double surrogate = std::isfinite(exponent) ? std::abs(exponent + 1.0) : 1.0;
        auto bound_at = [&](double r) { return 2.0 * std::abs(f(r)) * r / surrogate; };
        double cur = start;
        int quiet = 0;
        for (int decade = 0;; ++decade)
        {
            const double bound = bound_at(cur);
            const double threshold = std::max(spec.abs_tol, spec.rel_tol * std::abs(subtotal)) / 10.0;
            quiet = (bound < threshold) ? quiet + 1 : 0;
            if (quiet >= 2 || (bound == 0.0 && !std::isfinite(exponent) && quiet >= 1))
            {
                return {0.0, bound};
            }
            if (decade >= detail::kMaxDecades)
            {
                if (!std::isfinite(exponent))
                {
                    return {0.0, bound};
                }
                const double fc = f(cur);
                const double remainder = fc * cur / std::abs(exponent + 1.0);
                const double prev = down ? cur * 10.0 : cur / 10.0;
                const double fp = f(prev);
                double drift = 1.0;
                if (fp != 0.0 && fc != 0.0)
                {
                    // K(r) = F(r) r^{-e}; compare K(cur) with K(prev).
                    const double ratio =
                        std::exp(std::log(std::abs(fc / fp)) - exponent * std::log(cur / prev));
                    drift = std::abs(1.0 - ratio);
                }
                else if (fc == 0.0 && fp == 0.0)
                {
                    drift = 0.0;
                }
                return {remainder, std::abs(remainder) * drift};
            }
            const double next = down ? cur / 10.0 : cur * 10.0;
            if (down)
            {
                add_range(std::log(next), std::log(cur));
            }
            else
            {
                add_range(std::log(cur), std::log(next));
            }
            cur = next;
        }
    };

    Estimate head;
    Estimate tail;
    if (open_origin)
    {
        head = walk(body_lo, e0, true);
    }
    if (open_tail)
    {
        tail = walk(body_hi, einf, false);
    }

    auto totals = [&segments]() {
        std::array<double, 3> t{0.0, 0.0, 0.0};
        for (const auto& s : segments)
        {
            t[0] += s.value;
            t[1] += s.error;
            t[2] += s.abs_value;
        }
        return t;
    };
    std::make_heap(segments.begin(), segments.end());
    auto [value, error, abs_value] = totals();
    auto target = [&]() {
        const double total = value + head.value + tail.value;
        return std::max({spec.abs_tol, spec.rel_tol * std::abs(total),
                         64.0 * std::numeric_limits<double>::epsilon() * abs_value});
    };
    int subdivisions = 0;
    while (error > target())
    {
        if (subdivisions >= spec.max_subdivisions)
        {
            throw ToleranceNotReached("tolerance not reached after " + std::to_string(subdivisions)
                                          + " subdivisions",
                                      value + head.value + tail.value, error + head.error + tail.error);
        }
        std::pop_heap(segments.begin(), segments.end());
        const detail::Segment worst = segments.back();
        segments.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        for (const auto& half : {detail::gauss_kronrod21(g, worst.a, mid), detail::gauss_kronrod21(g, mid, worst.b)})
        {
            segments.push_back(half);
            std::push_heap(segments.begin(), segments.end());
        }
        ++subdivisions;
        // recompute instead of updating incrementally to avoid cancellation drift
        const auto t = totals();
        value = t[0];
        error = t[1];
        abs_value = t[2];
    }
    return {value + head.value + tail.value, error + head.error + tail.error};
}

/// \int_lo^hi g(r) r^k dr for a profile g, respecting its support.
inline Estimate integrate_weighted(const RadialProfile& g, double k, double lo, double hi,
                                   const QuadratureSpec& spec)
{
    const double a = std::max(lo, g.support_lo());
    const double b = std::min(hi, g.support_hi());
    if (!(b > a))
    {
        spec.validate();
        return {};
    }
    Integrand integrand;
    integrand.f = [&g, k](double r) { return detail::times_power(g(r), r, k); };
    integrand.origin_exponent = g.effective_origin_exponent() + k;
    integrand.tail_exponent = g.effective_tail_exponent() + k;
    integrand.breakpoints = g.breakpoints;
    if (g.support)
    {
        integrand.breakpoints.push_back(g.support->lo);
        integrand.breakpoints.push_back(g.support->hi);
    }
    return integrate(integrand, a, b, spec);
}

/// \int_lo^hi g(r) r^{Q-1} dr: the radial part of an integral over H^n in
/// polar coordinates (without the angular mass).
inline Estimate integrate_radial(const RadialProfile& g, const HeisSpace& space, Interval interval,
                                 const QuadratureSpec& spec)
{
    return integrate_weighted(g, space.Q - 1.0, interval.lo, interval.hi, spec);
}

}  // namespace hhsharp

#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "hhsharp/quadrature.hpp"

// Builders for the radial profiles used throughout: power laws, truncations,
// exponential bumps, the extremal family and pointwise combinations. Every
// builder fills in decay metadata that is valid by construction.

namespace hhsharp
{

inline RadialProfile zero_profile()
{
    RadialProfile p;
    p.eval = [](double) { return 0.0; };
    p.origin_exponent = kInf;
    p.tail_exponent = -kInf;
    return p;
}

inline RadialProfile constant_profile(double c)
{
    if (c == 0.0)
    {
        return zero_profile();
    }
    RadialProfile p;
    p.eval = [c](double) { return c; };
    p.origin_exponent = 0.0;
    p.tail_exponent = 0.0;
    return p;
}

/// r^alpha on (0, inf).
inline RadialProfile power_profile(double alpha)
{
    RadialProfile p;
    p.eval = [alpha](double r) { return std::pow(r, alpha); };
    p.origin_exponent = alpha;
    p.tail_exponent = alpha;
    return p;
}

/// r^alpha on (lo, hi], zero elsewhere.
inline RadialProfile truncated_power(double alpha, double lo, double hi = kInf)
{
    if (!(lo >= 0.0) || !(hi > lo))
    {
        throw DomainError("truncated_power: need 0 <= lo < hi");
    }
    RadialProfile p;
    p.eval = [alpha, lo, hi](double r) { return (r > lo && r <= hi) ? std::pow(r, alpha) : 0.0; };
    p.origin_exponent = alpha;
    p.tail_exponent = alpha;
    p.support = Interval{lo, hi};
    return p;
}

/// Indicator of (lo, hi].
inline RadialProfile indicator_profile(double lo, double hi)
{
    return truncated_power(0.0, lo, hi);
}

/// r^alpha e^{-lambda r}.
inline RadialProfile exp_bump(double lambda, double alpha = 0.0)
{
    if (!(lambda > 0.0))
    {
        throw DomainError("exp_bump: decay rate must be positive");
    }
    RadialProfile p;
    p.eval = [lambda, alpha](double r) { return std::pow(r, alpha) * std::exp(-lambda * r); };
    p.origin_exponent = alpha;
    p.tail_exponent = -kInf;
    return p;
}

/// r^a below 1 and r^b from 1 on (continuous at r = 1).
inline RadialProfile broken_power(double origin_alpha, double tail_alpha)
{
    RadialProfile p;
    p.eval = [origin_alpha, tail_alpha](double r) {
        return std::pow(r, r < 1.0 ? origin_alpha : tail_alpha);
    };
    p.origin_exponent = origin_alpha;
    p.tail_exponent = tail_alpha;
    p.breakpoints = {1.0};
    return p;
}

/// The extremal family: 0 on (0, 1], r^{-(Q/p + eps)} beyond.
inline RadialProfile extremal_profile(double eps, double Q, double p)
{
    if (!(eps > 0.0))
    {
        throw DomainError("extremal_profile: eps must be positive");
    }
    return truncated_power(-(Q / p + eps), 1.0, kInf);
}

namespace detail
{

inline std::optional<Interval> support_union(const RadialProfile& f, const RadialProfile& g)
{
    if (!f.support || !g.support)
    {
        return std::nullopt;
    }
    return Interval{std::min(f.support->lo, g.support->lo), std::max(f.support->hi, g.support->hi)};
}

inline std::optional<Interval> support_intersection(const RadialProfile& f, const RadialProfile& g)
{
    if (!f.support)
    {
        return g.support;
    }
    if (!g.support)
    {
        return f.support;
    }
    Interval s{std::max(f.support->lo, g.support->lo), std::min(f.support->hi, g.support->hi)};
    if (!(s.hi > s.lo))
    {
        s.hi = s.lo;
    }
    return s;
}

inline std::vector<double> merged_breakpoints(const RadialProfile& f, const RadialProfile& g)
{
    std::vector<double> out = f.breakpoints;
    out.insert(out.end(), g.breakpoints.begin(), g.breakpoints.end());
    for (const RadialProfile* h : {&f, &g})
    {
        if (h->support)
        {
            out.push_back(h->support->lo);
            out.push_back(h->support->hi);
        }
    }
    std::erase_if(out, [](double b) { return !(b > 0.0) || !std::isfinite(b); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

/// c * f.
inline RadialProfile scaled(RadialProfile f, double c)
{
    if (c == 0.0)
    {
        return zero_profile();
    }
    auto base = std::make_shared<const RadialProfile>(std::move(f));
    RadialProfile p = *base;
    p.eval = [base, c](double r) { return c * (*base)(r); };
    return p;
}

/// a f + b g.
inline RadialProfile linear_combination(double a, RadialProfile f, double b, RadialProfile g)
{
    if (a == 0.0)
    {
        return scaled(std::move(g), b);
    }
    if (b == 0.0)
    {
        return scaled(std::move(f), a);
    }
    auto pf = std::make_shared<const RadialProfile>(std::move(f));
    auto pg = std::make_shared<const RadialProfile>(std::move(g));
    RadialProfile p;
    p.eval = [pf, pg, a, b](double r) { return a * (*pf)(r) + b * (*pg)(r); };
    p.origin_exponent = std::min(pf->effective_origin_exponent(), pg->effective_origin_exponent());
    p.tail_exponent = std::max(pf->effective_tail_exponent(), pg->effective_tail_exponent());
    p.support = detail::support_union(*pf, *pg);
    p.breakpoints = detail::merged_breakpoints(*pf, *pg);
    return p;
}

/// Sum of c_i f_i.
inline RadialProfile mixture(const std::vector<std::pair<double, RadialProfile>>& terms)
{
    RadialProfile acc = zero_profile();
    for (const auto& [c, f] : terms)
    {
        acc = linear_combination(1.0, std::move(acc), c, f);
    }
    return acc;
}

/// Pointwise product f g.
inline RadialProfile product(RadialProfile f, RadialProfile g)
{
    auto pf = std::make_shared<const RadialProfile>(std::move(f));
    auto pg = std::make_shared<const RadialProfile>(std::move(g));
    RadialProfile p;
    p.eval = [pf, pg](double r) {
        const double a = (*pf)(r);
        return a == 0.0 ? 0.0 : a * (*pg)(r);
    };
    p.origin_exponent = pf->effective_origin_exponent() + pg->effective_origin_exponent();
    p.tail_exponent = pf->effective_tail_exponent() + pg->effective_tail_exponent();
    p.support = detail::support_intersection(*pf, *pg);
    p.breakpoints = detail::merged_breakpoints(*pf, *pg);
    return p;
}

/// |f|^p, with exponents multiplied by p.
inline RadialProfile abs_power(RadialProfile f, double p)
{
    if (!(p > 0.0))
    {
        throw DomainError("abs_power: exponent must be positive");
    }
    auto base = std::make_shared<const RadialProfile>(std::move(f));
    RadialProfile out = *base;
    out.eval = [base, p](double r) {
        const double v = std::abs((*base)(r));
        return v == 0.0 ? 0.0 : std::pow(v, p);
    };
    out.origin_exponent = base->origin_exponent * p;
    out.tail_exponent = base->tail_exponent * p;
    return out;
}

/// r -> f(lambda r).
inline RadialProfile dilated(RadialProfile f, double lambda)
{
    if (!(lambda > 0.0))
    {
        throw DomainError("dilated: lambda must be positive");
    }
    auto base = std::make_shared<const RadialProfile>(std::move(f));
    RadialProfile out = *base;
    out.eval = [base, lambda](double r) { return (*base)(lambda * r); };
    if (out.support)
    {
        out.support = Interval{base->support->lo / lambda, base->support->hi / lambda};
    }
    for (double& b : out.breakpoints)
    {
        b /= lambda;
    }
    return out;
}

}  // namespace hhsharp

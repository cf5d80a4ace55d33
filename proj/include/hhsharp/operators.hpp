#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "hhsharp/heis_geometry.hpp"
#include "hhsharp/profiles.hpp"
#include "hhsharp/quadrature.hpp"

namespace hhsharp
{

/// w : [0,1] -> [0, inf), either c t^beta (with exact moments) or a general
/// handle with w(t) = O(t^zero_exponent) as t -> 0+.
struct WeightFunction
{
    enum class Family
    {
        power_law,
        general,
    };

    std::function<double(double)> eval;
    Family family = Family::general;
    double c = 1.0;
    double beta = 0.0;
    double zero_exponent = 0.0;

    double operator()(double t) const { return eval(t); }

    static WeightFunction power_law(double c, double beta)
    {
        if (!(c > 0.0) || !std::isfinite(beta))
        {
            throw DomainError("power-law weight needs c > 0 and finite beta");
        }
        WeightFunction w;
        w.eval = [c, beta](double t) { return c * std::pow(t, beta); };
        w.family = Family::power_law;
        w.c = c;
        w.beta = beta;
        w.zero_exponent = beta;
        return w;
    }

    static WeightFunction general(std::function<double(double)> fn, double zero_exponent)
    {
        WeightFunction w;
        w.eval = std::move(fn);
        w.family = Family::general;
        w.zero_exponent = zero_exponent;
        return w;
    }
};

/// \int_0^1 t^gamma w(t) dt. Exact for power-law weights, adaptive otherwise.
inline Estimate weight_moment(const WeightFunction& w, double gamma, const QuadratureSpec& spec)
{
    if (!(w.zero_exponent + gamma > -1.0))
    {
        throw DivergentIntegral("divergent moment: t^" + std::to_string(gamma) + " w(t) is not integrable at 0");
    }
    if (w.family == WeightFunction::Family::power_law)
    {
        return {w.c / (w.beta + gamma + 1.0), 0.0};
    }
    Integrand integrand;
    integrand.f = [&w, gamma](double t) { return detail::times_power(w(t), t, gamma); };
    integrand.origin_exponent = w.zero_exponent + gamma;
    return integrate(integrand, 0.0, 1.0, spec);
}

struct OperatorKind
{
    enum class Tag
    {
        hardy,
        dual_hardy,
        weighted_hardy,
        weighted_cesaro,
    };

    Tag tag = Tag::hardy;
    std::optional<WeightFunction> weight;

    static OperatorKind hardy() { return {Tag::hardy, std::nullopt}; }
    static OperatorKind dual_hardy() { return {Tag::dual_hardy, std::nullopt}; }
    static OperatorKind weighted_hardy(WeightFunction w) { return {Tag::weighted_hardy, std::move(w)}; }
    static OperatorKind weighted_cesaro(WeightFunction w) { return {Tag::weighted_cesaro, std::move(w)}; }

    bool is_weighted() const { return tag == Tag::weighted_hardy || tag == Tag::weighted_cesaro; }

    const WeightFunction& require_weight() const
    {
        if (!weight)
        {
            throw DomainError("weighted operator kind without a weight");
        }
        return *weight;
    }

    std::string name() const
    {
        switch (tag)
        {
        case Tag::hardy:
            return "hardy";
        case Tag::dual_hardy:
            return "dual-hardy";
        case Tag::weighted_hardy:
            return "whardy";
        case Tag::weighted_cesaro:
            return "wcesaro";
        }
        return "unknown";
    }
};

namespace detail
{

// Nudge applied to an exponent where the asymptotics pick up a log factor.
inline constexpr double kLogSlack = 1e-9;

inline std::vector<double> knots_of(const RadialProfile& f)
{
    std::vector<double> out = f.breakpoints;
    if (f.support)
    {
        out.push_back(f.support->lo);
        out.push_back(f.support->hi);
    }
    std::erase_if(out, [](double b) { return !(b > 0.0) || !std::isfinite(b); });
    return out;
}

}  // namespace detail

/// H_h on radial functions: r -> (Q / r^Q) \int_0^r f(s) s^{Q-1} ds.
/// Evaluated as Q/r \int_0^r f(s) (s/r)^{Q-1} ds so no r^Q is ever formed.
inline RadialProfile hardy(RadialProfile f, const HeisSpace& space, const QuadratureSpec& spec)
{
    const double Q = space.Q;
    if (!(f.effective_origin_exponent() > -Q))
    {
        throw DivergentIntegral("hardy: divergent near origin (origin exponent "
                                + std::to_string(f.origin_exponent) + " <= -Q)");
    }
    spec.validate();
    auto src = std::make_shared<const RadialProfile>(std::move(f));
    RadialProfile out;
    out.eval = [src, Q, spec](double r) {
        const double hi = std::min(r, src->support_hi());
        const double lo = src->support_lo();
        if (!(hi > lo))
        {
            return 0.0;
        }
        Integrand integrand;
        integrand.f = [&src, r, Q](double s) { return detail::times_power((*src)(s), s / r, Q - 1.0) / r; };
        integrand.origin_exponent = src->effective_origin_exponent() + Q - 1.0;
        integrand.breakpoints = detail::knots_of(*src);
        return Q * integrate(integrand, lo, hi, spec).value;
    };
    out.origin_exponent = src->reaches_origin() ? std::min(src->origin_exponent, 0.0) : 0.0;
    const double a_inf = src->effective_tail_exponent();
    out.tail_exponent = (a_inf == -Q) ? -Q + detail::kLogSlack : std::max(a_inf, -Q);
    if (!src->reaches_origin())
    {
        out.support = Interval{src->support_lo(), kInf};
    }
    out.breakpoints = detail::knots_of(*src);
    return out;
}

/// H_h^* on radial functions: r -> Q \int_r^inf f(s) s^{-1} ds.
inline RadialProfile dual_hardy(RadialProfile f, const HeisSpace& space, const QuadratureSpec& spec)
{
    const double Q = space.Q;
    if (!(f.effective_tail_exponent() < 0.0))
    {
        throw DivergentIntegral("dual_hardy: divergent tail (tail exponent " + std::to_string(f.tail_exponent)
                                + " >= 0)");
    }
    spec.validate();
    auto src = std::make_shared<const RadialProfile>(std::move(f));
    RadialProfile out;
    out.eval = [src, Q, spec](double r) {
        const double lo = std::max(r, src->support_lo());
        const double hi = src->support_hi();
        if (!(hi > lo))
        {
            return 0.0;
        }
        Integrand integrand;
        integrand.f = [&src](double s) { return (*src)(s) / s; };
        integrand.origin_exponent = src->effective_origin_exponent() - 1.0;
        integrand.tail_exponent = src->effective_tail_exponent() - 1.0;
        integrand.breakpoints = detail::knots_of(*src);
        return Q * integrate(integrand, lo, hi, spec).value;
    };
    if (src->reaches_origin())
    {
        const double a0 = src->origin_exponent;
        out.origin_exponent = a0 < 0.0 ? a0 : (a0 == 0.0 ? -detail::kLogSlack : 0.0);
    }
    else
    {
        out.origin_exponent = 0.0;
    }
    out.tail_exponent = src->tail_exponent;
    if (!src->reaches_infinity())
    {
        out.support = Interval{0.0, src->support_hi()};
    }
    out.breakpoints = detail::knots_of(*src);
    return out;
}

/// H_hw on radial functions: r -> \int_0^1 f(t r) w(t) dt, evaluated as
/// (1/r) \int_0^r f(s) w(s/r) ds.
inline RadialProfile weighted_hardy(RadialProfile f, const WeightFunction& w, const HeisSpace& space,
                                    const QuadratureSpec& spec)
{
    (void)space;
    const double beta0 = w.zero_exponent;
    if (f.reaches_origin() && !(beta0 + f.origin_exponent > -1.0))
    {
        throw DivergentIntegral("weighted_hardy: divergent moment near t = 0");
    }
    spec.validate();
    auto src = std::make_shared<const RadialProfile>(std::move(f));
    auto weight = std::make_shared<const WeightFunction>(w);
    RadialProfile out;
    out.eval = [src, weight, spec, beta0](double r) {
        const double hi = std::min(r, src->support_hi());
        const double lo = src->support_lo();
        if (!(hi > lo))
        {
            return 0.0;
        }
        Integrand integrand;
        integrand.f = [&src, &weight, r](double s) {
            const double v = (*src)(s);
            return v == 0.0 ? 0.0 : v * (*weight)(s / r) / r;
        };
        integrand.origin_exponent = src->effective_origin_exponent() + beta0;
        integrand.breakpoints = detail::knots_of(*src);
        return integrate(integrand, lo, hi, spec).value;
    };
    out.origin_exponent = src->reaches_origin() ? src->origin_exponent : 0.0;
    const double a_inf = src->effective_tail_exponent();
    const double near = -1.0 - beta0;
    out.tail_exponent = (a_inf == near) ? near + detail::kLogSlack : std::max(a_inf, near);
    if (!src->reaches_origin())
    {
        out.support = Interval{src->support_lo(), kInf};
    }
    out.breakpoints = detail::knots_of(*src);
    return out;
}

/// H^*_hw on radial functions: r -> \int_0^1 f(r/t) t^{-Q} w(t) dt, evaluated
/// as (1/r) \int_r^inf f(s) (s/r)^{Q-2} w(r/s) ds.
inline RadialProfile weighted_cesaro(RadialProfile f, const WeightFunction& w, const HeisSpace& space,
                                     const QuadratureSpec& spec)
{
    const double Q = space.Q;
    const double beta0 = w.zero_exponent;
    if (f.reaches_infinity() && !(beta0 - Q - f.tail_exponent > -1.0))
    {
        throw DivergentIntegral("weighted_cesaro: divergent near t = 0");
    }
    spec.validate();
    auto src = std::make_shared<const RadialProfile>(std::move(f));
    auto weight = std::make_shared<const WeightFunction>(w);
    RadialProfile out;
    out.eval = [src, weight, spec, Q, beta0](double r) {
        const double lo = std::max(r, src->support_lo());
        const double hi = src->support_hi();
        if (!(hi > lo))
        {
            return 0.0;
        }
        Integrand integrand;
        integrand.f = [&src, &weight, r, Q](double s) {
            const double v = (*src)(s);
            if (v == 0.0)
            {
                return 0.0;
            }
            return detail::times_power(v * (*weight)(r / s), s / r, Q - 2.0) / r;
        };
        integrand.tail_exponent = src->effective_tail_exponent() + Q - 2.0 - beta0;
        integrand.breakpoints = detail::knots_of(*src);
        return integrate(integrand, lo, hi, spec).value;
    };
    const double near = 1.0 - Q + beta0;
    if (src->reaches_origin())
    {
        const double a0 = src->origin_exponent;
        out.origin_exponent = (a0 == near) ? near - detail::kLogSlack : std::min(a0, near);
    }
    else
    {
        out.origin_exponent = near;
    }
    out.tail_exponent = src->tail_exponent;
    if (!src->reaches_infinity())
    {
        out.support = Interval{0.0, src->support_hi()};
    }
    out.breakpoints = detail::knots_of(*src);
    return out;
}

/// Dispatch on the operator kind.
inline RadialProfile apply(const OperatorKind& kind, RadialProfile f, const HeisSpace& space,
                           const QuadratureSpec& spec)
{
    switch (kind.tag)
    {
    case OperatorKind::Tag::hardy:
        return hardy(std::move(f), space, spec);
    case OperatorKind::Tag::dual_hardy:
        return dual_hardy(std::move(f), space, spec);
    case OperatorKind::Tag::weighted_hardy:
        return weighted_hardy(std::move(f), kind.require_weight(), space, spec);
    case OperatorKind::Tag::weighted_cesaro:
        return weighted_cesaro(std::move(f), kind.require_weight(), space, spec);
    }
    throw DomainError("apply: unknown operator kind");
}

/// T f at a point x != 0 of H^n, through r = |x|_h.
inline double apply_pointwise(const OperatorKind& kind, RadialProfile f, const HeisPoint& x,
                              const HeisSpace& space, const QuadratureSpec& spec)
{
    if (!space.contains(x))
    {
        throw DimensionMismatch("apply_pointwise: point does not belong to this H^n");
    }
    const double r = koranyi_norm(x);
    if (!(r > 0.0))
    {
        throw DomainError("apply_pointwise: operators are defined on H^n minus the origin");
    }
    return apply(kind, std::move(f), space, spec)(r);
}

/// Tolerances for operator evaluations nested inside an outer integral:
/// two digits tighter than the outer request and purely relative.
inline QuadratureSpec nested_spec(const QuadratureSpec& outer)
{
    QuadratureSpec inner = outer.relative_only();
    inner.rel_tol = std::max(outer.rel_tol * 1e-2, 1e-13);
    return inner;
}

/// Both sides of  \int f (H_hw g) = \int g (H^*_hw f)  over H^n, each by its
/// own nested quadrature.
inline std::pair<Estimate, Estimate> duality_pairing_check(const RadialProfile& f, const RadialProfile& g,
                                                           const WeightFunction& w, const HeisSpace& space,
                                                           const QuadratureSpec& spec)
{
    const QuadratureSpec inner = nested_spec(spec);
    const RadialProfile left = product(f, weighted_hardy(g, w, space, inner));
    const RadialProfile right = product(g, weighted_cesaro(f, w, space, inner));
    Estimate lhs = integrate_radial(left, space, {0.0, kInf}, spec);
    Estimate rhs = integrate_radial(right, space, {0.0, kInf}, spec);
    lhs.value *= space.omega_small;
    lhs.error *= space.omega_small;
    rhs.value *= space.omega_small;
    rhs.error *= space.omega_small;
    return {lhs, rhs};
}

}  // namespace hhsharp

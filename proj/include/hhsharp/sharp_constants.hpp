#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hhsharp/counter_rng.hpp"
#include "hhsharp/heis_geometry.hpp"
#include "hhsharp/mixed_norm.hpp"
#include "hhsharp/operators.hpp"
#include "hhsharp/profiles.hpp"
#include "hhsharp/quadrature.hpp"
#include "hhsharp/sampling.hpp"

namespace hhsharp
{

struct SharpConstantQuery
{
    OperatorKind kind;
    MixedExponents exps;
    HeisSpace space;
};

/// omega_Q^delta, the only place the angular exponents enter a constant.
inline double angular_factor(const SharpConstantQuery& q)
{
    return std::pow(q.space.omega_small, q.exps.delta);
}

/// The weight moment entering the weighted constants:
///   \int_0^1 t^{-Q/p} w(t) dt       for the weighted Hardy operator,
///   \int_0^1 t^{-Q(1-1/p)} w(t) dt  for the weighted Cesaro operator.
inline double weight_moment_exponent(const SharpConstantQuery& q)
{
    const double Q = q.space.Q;
    const double p = q.exps.p;
    return q.kind.tag == OperatorKind::Tag::weighted_hardy ? -Q / p : -Q * (1.0 - 1.0 / p);
}

/// Operator norm from L^p_{|x|} L^{pbar_1}_theta to L^p_{|x|} L^{pbar_2}_theta.
/// Throws UnboundedOperator when the weight moment diverges.
inline double theoretical_constant(const SharpConstantQuery& q, const QuadratureSpec& spec = {})
{
    const double p = q.exps.p;
    const double factor = angular_factor(q);
    switch (q.kind.tag)
    {
    case OperatorKind::Tag::hardy:
        return p / (p - 1.0) * factor;
    case OperatorKind::Tag::dual_hardy:
        return p * factor;
    case OperatorKind::Tag::weighted_hardy:
    case OperatorKind::Tag::weighted_cesaro:
        try
        {
            return weight_moment(q.kind.require_weight(), weight_moment_exponent(q), spec).value * factor;
        }
        catch (const DivergentIntegral& e)
        {
            throw UnboundedOperator(std::string("unbounded operator for this weight: ") + e.what());
        }
    }
    throw DomainError("theoretical_constant: unknown kind");
}

/// The power-tail family 0 on (0,1], r^{-(Q/p + eps)} beyond.
struct ExtremalFamily
{
    double epsilon;
    RadialProfile profile;

    ExtremalFamily(double eps, const HeisSpace& space, double p) : epsilon(eps), profile()
    {
        if (!(eps > 0.0 && eps < 1.0))
        {
            throw DomainError("ExtremalFamily: eps must lie in (0, 1)");
        }
        profile = extremal_profile(eps, space.Q, p);
    }
};

struct RatioProvenance
{
    double rel_tol = 0.0;
    double abs_tol = 0.0;
    double inner_rel_tol = 0.0;
    std::optional<std::uint64_t> seed;
    std::size_t trials = 0;
};

/// ||T f|| / ||f|| against the sharp constant. error_estimate is relative.
struct RatioReport
{
    double epsilon = std::numeric_limits<double>::quiet_NaN();
    double ratio = 0.0;
    double constant = 0.0;
    double relative_gap = 0.0;
    double error_estimate = 0.0;
    RatioProvenance provenance;
    std::string source;

    /// ratio <= constant (1 + slack + error_estimate)
    bool within_bound(double slack = 1e-6) const { return ratio <= constant * (1.0 + slack + error_estimate); }
};

/// Ratio of mixed norms for one input profile.
inline RatioReport operator_norm_ratio(const SharpConstantQuery& q, const RadialProfile& f,
                                       const QuadratureSpec& spec)
{
    const QuadratureSpec inner = nested_spec(spec);
    const RadialProfile image = apply(q.kind, f, q.space, inner);
    const Estimate num = mixed_norm_radial(image, q.exps.p, q.exps.p_bar_2, q.space, spec);
    const Estimate den = mixed_norm_radial(f, q.exps.p, q.exps.p_bar_1, q.space, spec);
    if (!(den.value > 0.0))
    {
        throw DomainError("operator_norm_ratio: input has zero norm");
    }
    RatioReport report;
    report.constant = theoretical_constant(q, spec);
    report.ratio = num.value / den.value;
    report.relative_gap = 1.0 - report.ratio / report.constant;
    report.error_estimate = (num.value > 0.0 ? num.error / num.value : 0.0) + den.error / den.value + inner.rel_tol;
    report.provenance = {spec.rel_tol, spec.abs_tol, inner.rel_tol, std::nullopt, 0};
    return report;
}

/// Ratio along the extremal family at one eps.
inline RatioReport extremal_ratio(const SharpConstantQuery& q, double eps, const QuadratureSpec& spec)
{
    // constant first: an unbounded weight is reported before any quadrature
    (void)theoretical_constant(q, spec);
    const ExtremalFamily family(eps, q.space, q.exps.p);
    RatioReport report = operator_norm_ratio(q, family.profile, spec);
    report.epsilon = eps;
    std::ostringstream src;
    src << "extremal eps=" << eps;
    report.source = src.str();
    return report;
}

inline constexpr std::array<double, 5> kDefaultEpsGrid = {0.1, 0.03, 0.01, 0.003, 0.001};

inline std::vector<RatioReport> convergence_table(const SharpConstantQuery& q, std::span<const double> eps_list,
                                                  const QuadratureSpec& spec)
{
    if (eps_list.empty())
    {
        throw DomainError("convergence_table: empty eps list");
    }
    for (std::size_t i = 0; i < eps_list.size(); ++i)
    {
        if (!(eps_list[i] > 0.0 && eps_list[i] < 1.0) || (i > 0 && !(eps_list[i] < eps_list[i - 1])))
        {
            throw DomainError("convergence_table: eps list must be strictly decreasing inside (0, 1)");
        }
    }
    std::vector<RatioReport> rows;
    rows.reserve(eps_list.size());
    for (double eps : eps_list)
    {
        rows.push_back(extremal_ratio(q, eps, spec));
    }
    return rows;
}

struct ProbeResult
{
    RatioReport worst;
    std::size_t trials = 0;
    bool bound_holds = true;
    std::vector<double> ratios;
};

/// Random admissible profile number `trial`: a mixture of one to three terms
/// drawn from broken powers, one-sided truncated powers and exponential bumps.
/// Origin exponents lie in (-Q/p + 0.1, 2) and tail exponents in
/// (-Q/p - 2, -Q/p - 0.1), so every mixed norm involved is finite.
inline std::pair<RadialProfile, std::string> random_admissible_profile(const HeisSpace& space, double p,
                                                                      std::uint64_t seed, std::uint64_t trial)
{
    const CounterRng rng(seed, static_cast<std::uint64_t>(RngStream::probe));
    const double s = space.Q / p;
    const int terms = 1 + static_cast<int>(3.0 * rng.uniform(trial, 0, 0));
    std::vector<std::pair<double, RadialProfile>> parts;
    std::ostringstream desc;
    for (int j = 0; j < terms; ++j)
    {
        const auto a = static_cast<std::uint32_t>(j + 1);
        const int type = static_cast<int>(4.0 * rng.uniform(trial, a, 0));
        const double weight = rng.uniform(trial, a, 1, 0.05, 1.0);
        const double origin_alpha = rng.uniform(trial, a, 2, -s + 0.1, 2.0);
        const double tail_alpha = rng.uniform(trial, a, 3, -s - 2.0, -s - 0.1);
        const double scale = rng.uniform(trial, a, 4, 0.2, 3.0);
        const double rate = rng.uniform(trial, a, 5, 0.2, 5.0);
        if (j > 0)
        {
            desc << " + ";
        }
        desc << weight << "*";
        switch (type)
        {
        case 0:
            parts.emplace_back(weight, broken_power(origin_alpha, tail_alpha));
            desc << "broken(" << origin_alpha << "," << tail_alpha << ")";
            break;
        case 1:
            parts.emplace_back(weight, truncated_power(tail_alpha, scale));
            desc << "tail(" << tail_alpha << ",lo=" << scale << ")";
            break;
        case 2:
            parts.emplace_back(weight, truncated_power(origin_alpha, 0.0, scale));
            desc << "head(" << origin_alpha << ",hi=" << scale << ")";
            break;
        default:
            parts.emplace_back(weight, exp_bump(rate, origin_alpha));
            desc << "bump(" << origin_alpha << ",rate=" << rate << ")";
            break;
        }
    }
    return {mixture(parts), desc.str()};
}

/// Worst ratio over explicitly supplied profiles.
inline ProbeResult upper_bound_probe(const SharpConstantQuery& q, std::span<const RadialProfile> profiles,
                                     const QuadratureSpec& spec, std::span<const std::string> labels = {})
{
    if (profiles.empty())
    {
        throw DomainError("upper_bound_probe: need at least one trial");
    }
    ProbeResult result;
    result.trials = profiles.size();
    for (std::size_t i = 0; i < profiles.size(); ++i)
    {
        RatioReport r = operator_norm_ratio(q, profiles[i], spec);
        r.source = i < labels.size() ? labels[i] : "profile " + std::to_string(i);
        result.ratios.push_back(r.ratio);
        result.bound_holds = result.bound_holds && r.within_bound();
        if (i == 0 || r.ratio > result.worst.ratio)
        {
            result.worst = r;
        }
    }
    result.worst.provenance.trials = result.trials;
    return result;
}

/// Worst ratio over `trials` random admissible profiles.
inline ProbeResult upper_bound_probe(const SharpConstantQuery& q, std::size_t trials, std::uint64_t seed,
                                     const QuadratureSpec& spec)
{
    if (trials < 1)
    {
        throw DomainError("upper_bound_probe: trials must be >= 1");
    }
    (void)theoretical_constant(q, spec);
    std::vector<RadialProfile> profiles;
    std::vector<std::string> labels;
    for (std::uint64_t t = 0; t < trials; ++t)
    {
        auto [f, desc] = random_admissible_profile(q.space, q.exps.p, seed, t);
        profiles.push_back(std::move(f));
        labels.push_back("trial " + std::to_string(t) + ": " + desc);
    }
    ProbeResult result = upper_bound_probe(q, profiles, spec, labels);
    result.worst.provenance.seed = seed;
    return result;
}

}  // namespace hhsharp

#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "hhsharp/errors.hpp"
#include "hhsharp/heis_geometry.hpp"
#include "hhsharp/operators.hpp"
#include "hhsharp/profiles.hpp"

// Text forms for radial profiles and weights, as accepted on the command line.
//
//   zero | const:C | power:A | truncated-power:A,LO[,HI] | indicator:LO,HI
//   exp:L[,A] (alias exponential) | broken-power:A0,AINF | extremal:EPS
//   mixture:C1*SPEC1;C2*SPEC2;...
//
//   weights: power:c=C,beta=B (either key optional; c=1, beta=0 by default)

namespace hhsharp
{

/// Malformed user input; the CLI maps it to exit status 2.
class ConfigError : public Error
{
  public:
    using Error::Error;
};

namespace detail
{

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
    {
        s.remove_suffix(1);
    }
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
    {
        if (i == s.size() || s[i] == sep)
        {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

inline double parse_number(std::string_view text, std::string_view context)
{
    text = trim(text);
    // libstdc++ from_chars rejects a leading '+'
    if (!text.empty() && text.front() == '+')
    {
        text.remove_prefix(1);
    }
    if (text == "inf" || text == "infinity")
    {
        return kInf;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    {
        throw ConfigError("cannot parse number '" + std::string(text) + "' in '" + std::string(context) + "'");
    }
    return value;
}

inline std::vector<double> parse_args(std::string_view args, std::string_view context, std::size_t min_count,
                                      std::size_t max_count)
{
    std::vector<double> out;
    if (!trim(args).empty())
    {
        for (auto tok : split(args, ','))
        {
            out.push_back(parse_number(tok, context));
        }
    }
    if (out.size() < min_count || out.size() > max_count)
    {
        throw ConfigError("wrong number of arguments in '" + std::string(context) + "'");
    }
    return out;
}

}  // namespace detail

/// Parses a profile description; `p` is only consulted by `extremal:`.
inline RadialProfile parse_function_spec(std::string_view text, const HeisSpace& space, double p)
{
    text = detail::trim(text);
    const auto colon = text.find(':');
    const std::string_view head = detail::trim(text.substr(0, colon));
    const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    try
    {
        if (head == "zero")
        {
            detail::parse_args(args, text, 0, 0);
            return zero_profile();
        }
        if (head == "const")
        {
            return constant_profile(detail::parse_args(args, text, 1, 1)[0]);
        }
        if (head == "power")
        {
            return power_profile(detail::parse_args(args, text, 1, 1)[0]);
        }
        if (head == "truncated-power")
        {
            const auto a = detail::parse_args(args, text, 2, 3);
            return truncated_power(a[0], a[1], a.size() > 2 ? a[2] : kInf);
        }
        if (head == "indicator")
        {
            const auto a = detail::parse_args(args, text, 2, 2);
            return indicator_profile(a[0], a[1]);
        }
        if (head == "exp" || head == "exponential")
        {
            const auto a = detail::parse_args(args, text, 1, 2);
            return exp_bump(a[0], a.size() > 1 ? a[1] : 0.0);
        }
        if (head == "broken-power")
        {
            const auto a = detail::parse_args(args, text, 2, 2);
            return broken_power(a[0], a[1]);
        }
        if (head == "extremal")
        {
            const double eps = detail::parse_args(args, text, 1, 1)[0];
            if (!(eps > 0.0 && eps < 1.0))
            {
                throw ConfigError("extremal: eps must lie in (0, 1)");
            }
            return extremal_profile(eps, space.Q, p);
        }
        if (head == "mixture")
        {
            std::vector<std::pair<double, RadialProfile>> terms;
            for (auto term : detail::split(args, ';'))
            {
                const auto star = term.find('*');
                if (star == std::string_view::npos)
                {
                    throw ConfigError("mixture term '" + std::string(term) + "' needs the form C*SPEC");
                }
                terms.emplace_back(detail::parse_number(term.substr(0, star), text),
                                   parse_function_spec(term.substr(star + 1), space, p));
            }
            if (terms.empty())
            {
                throw ConfigError("empty mixture");
            }
            return mixture(terms);
        }
    }
    catch (const DomainError& e)
    {
        throw ConfigError(std::string(e.what()));
    }
    throw ConfigError("unknown function spec '" + std::string(text) + "'");
}

/// Parses "power:c=C,beta=B".
inline WeightFunction parse_weight_spec(std::string_view text)
{
    text = detail::trim(text);
    const auto colon = text.find(':');
    const std::string_view head = detail::trim(text.substr(0, colon));
    if (head != "power")
    {
        throw ConfigError("unknown weight family '" + std::string(head) + "' (only power:c=..,beta=.. is supported)");
    }
    double c = 1.0;
    double beta = 0.0;
    if (colon != std::string_view::npos)
    {
        for (auto kv : detail::split(text.substr(colon + 1), ','))
        {
            if (kv.empty())
            {
                continue;
            }
            const auto eq = kv.find('=');
            if (eq == std::string_view::npos)
            {
                throw ConfigError("weight parameter '" + std::string(kv) + "' needs key=value");
            }
            const auto key = detail::trim(kv.substr(0, eq));
            const double value = detail::parse_number(kv.substr(eq + 1), text);
            if (key == "c")
            {
                c = value;
            }
            else if (key == "beta")
            {
                beta = value;
            }
            else
            {
                throw ConfigError("unknown weight parameter '" + std::string(key) + "'");
            }
        }
    }
    try
    {
        return WeightFunction::power_law(c, beta);
    }
    catch (const DomainError& e)
    {
        throw ConfigError(e.what());
    }
}

/// Parses "hardy" | "dual-hardy" | "whardy" | "wcesaro" (plus a few aliases).
inline OperatorKind parse_operator_kind(std::string_view name, const WeightFunction& weight)
{
    name = detail::trim(name);
    if (name == "hardy")
    {
        return OperatorKind::hardy();
    }
    if (name == "dual-hardy" || name == "dual_hardy" || name == "dualhardy")
    {
        return OperatorKind::dual_hardy();
    }
    if (name == "whardy" || name == "weighted-hardy")
    {
        return OperatorKind::weighted_hardy(weight);
    }
    if (name == "wcesaro" || name == "weighted-cesaro")
    {
        return OperatorKind::weighted_cesaro(weight);
    }
    throw ConfigError("unknown operator kind '" + std::string(name) + "'");
}

}  // namespace hhsharp

#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "hhsharp/errors.hpp"

namespace hhsharp
{

namespace detail
{

// Lanczos approximation, g = 7, nine coefficients.
inline double lanczos_gamma(double x)
{
    static constexpr std::array<double, 9> coef = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    constexpr double g = 7.0;
    if (x < 0.5)
    {
        // reflection
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
    }
    x -= 1.0;
    double acc = coef[0];
    for (std::size_t i = 1; i < coef.size(); ++i)
    {
        acc += coef[i] / (x + static_cast<double>(i));
    }
    const double t = x + g + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

}  // namespace detail

/// Gamma function. Positive integers and half-integers use the exact
/// recurrences; everything else goes through Lanczos.
inline double gamma_function(double x)
{
    if (!std::isfinite(x))
    {
        throw DomainError("gamma_function: non-finite argument");
    }
    if (x <= 0.0 && x == std::floor(x))
    {
        throw DomainError("gamma_function: pole at non-positive integer");
    }
    const double twice = 2.0 * x;
    if (x > 0.0 && twice == std::floor(twice) && x <= 170.0)
    {
        // Gamma(k) = (k-1)!, Gamma(k + 1/2) = sqrt(pi) * prod_{j<k} (j + 1/2)
        double value = (x == std::floor(x)) ? 1.0 : std::sqrt(std::numbers::pi);
        double y = (x == std::floor(x)) ? 1.0 : 0.5;
        while (y < x)
        {
            value *= y;
            y += 1.0;
        }
        return value;
    }
    return detail::lanczos_gamma(x);
}

}  // namespace hhsharp

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hhsharp/errors.hpp"
#include "hhsharp/special_functions.hpp"

namespace hhsharp
{

/// A point of H^n stored as its 2n+1 real coordinates
/// (x_1, ..., x_{2n}, x_{2n+1}); the last one is the center direction.
class HeisPoint
{
  public:
    explicit HeisPoint(std::vector<double> coords) : coords_(std::move(coords))
    {
        if (coords_.size() < 3 || coords_.size() % 2 == 0)
        {
            throw DimensionMismatch("HeisPoint: need 2n+1 coordinates with n >= 1, got "
                                    + std::to_string(coords_.size()));
        }
        for (double c : coords_)
        {
            if (!std::isfinite(c))
            {
                throw DomainError("HeisPoint: non-finite coordinate");
            }
        }
    }

    HeisPoint(std::initializer_list<double> coords) : HeisPoint(std::vector<double>(coords)) {}

    static HeisPoint origin(int n) { return HeisPoint(std::vector<double>(2 * n + 1, 0.0)); }

    int n() const { return static_cast<int>(coords_.size() / 2); }
    std::size_t size() const { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const { return coords_; }
    double center() const { return coords_.back(); }

    friend bool operator==(const HeisPoint&, const HeisPoint&) = default;

  private:
    std::vector<double> coords_;
};

/// H^n together with its homogeneous dimension and ball/sphere constants.
struct HeisSpace
{
    int n;
    int Q;
    double omega_big;    // |B(0,1)|
    double omega_small;  // Q * |B(0,1)|

    explicit HeisSpace(int n_) : n(n_), Q(2 * n_ + 2), omega_big(0.0), omega_small(0.0)
    {
        if (n_ < 1)
        {
            throw DomainError("HeisSpace: n must be >= 1");
        }
        const double nd = n_;
        omega_big = 2.0 * std::pow(std::numbers::pi, nd + 0.5) * gamma_function(nd / 2.0)
                    / ((nd + 1.0) * gamma_function(nd) * gamma_function((nd + 1.0) / 2.0));
        omega_small = Q * omega_big;
    }

    bool contains(const HeisPoint& x) const { return x.n() == n; }
};

namespace detail
{

inline void require_same_dim(const HeisPoint& x, const HeisPoint& y, const char* who)
{
    if (x.size() != y.size())
    {
        throw DimensionMismatch(std::string(who) + ": points live in different H^n");
    }
}

// Neumaier-compensated accumulator; products are split exactly with fma.
struct CompensatedSum
{
    double sum = 0.0;
    double comp = 0.0;

    void add(double v)
    {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
        {
            comp += (sum - t) + v;
        }
        else
        {
            comp += (v - t) + sum;
        }
        sum = t;
    }

    void add_product(double a, double b)
    {
        const double p = a * b;
        add(p);
        add(std::fma(a, b, -p));
    }

    double value() const { return sum + comp; }
};

}  // namespace detail

/// x o y. The center coordinate is accumulated with compensated arithmetic so
/// that (x o y) o z and x o (y o z) agree to a few ulps.
inline HeisPoint group_mul(const HeisPoint& x, const HeisPoint& y)
{
    detail::require_same_dim(x, y, "group_mul");
    const std::size_t n = static_cast<std::size_t>(x.n());
    std::vector<double> out(2 * n + 1);
    for (std::size_t i = 0; i < 2 * n; ++i)
    {
        out[i] = x[i] + y[i];
    }
    detail::CompensatedSum last;
    last.add(x[2 * n]);
    last.add(y[2 * n]);
    for (std::size_t j = 0; j < n; ++j)
    {
        last.add_product(2.0 * y[j], x[n + j]);
        last.add_product(-2.0 * x[j], y[n + j]);
    }
    out[2 * n] = last.value();
    return HeisPoint(std::move(out));
}

/// Inverse element; the symplectic term vanishes so this is plain negation.
inline HeisPoint group_inv(const HeisPoint& x)
{
    std::vector<double> out(x.coords().begin(), x.coords().end());
    for (double& c : out)
    {
        c = -c;
    }
    return HeisPoint(std::move(out));
}

/// delta_r: horizontal coordinates scale by r, the center by r^2.
inline HeisPoint dilate(double r, const HeisPoint& x)
{
    if (!(r > 0.0) || !std::isfinite(r))
    {
        throw DomainError("dilate: r must be positive and finite");
    }
    std::vector<double> out(x.coords().begin(), x.coords().end());
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
    {
        out[i] *= r;
    }
    out.back() *= r * r;
    return HeisPoint(std::move(out));
}

/// Koranyi gauge [(sum x_i^2)^2 + x_{2n+1}^2]^{1/4}.
inline double koranyi_norm(const HeisPoint& x)
{
    // rescale by a degree-1 size so squares cannot overflow or underflow
    double scale = std::sqrt(std::abs(x.center()));
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
    {
        scale = std::max(scale, std::abs(x[i]));
    }
    if (scale == 0.0 || !std::isfinite(scale))
    {
        return scale;
    }
    double horizontal = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
    {
        const double u = x[i] / scale;
        horizontal += u * u;
    }
    return scale * std::sqrt(std::hypot(horizontal, x.center() / scale / scale));
}

inline double heis_distance(const HeisPoint& p, const HeisPoint& q)
{
    detail::require_same_dim(p, q, "heis_distance");
    return koranyi_norm(group_mul(group_inv(q), p));
}

/// |B(x, r)| = Omega_Q r^Q.
inline double ball_volume(const HeisSpace& space, double r)
{
    if (!(r > 0.0) || !std::isfinite(r))
    {
        throw DomainError("ball_volume: r must be positive and finite");
    }
    return space.omega_big * std::pow(r, space.Q);
}

/// Lebesgue measure of {|x|_h <= r} for this gauge, from slicing over the
/// horizontal radius:  pi^n Gamma(n/2) Gamma(3/2) / (Gamma(n) Gamma((n+3)/2)) r^Q.
/// This is half of Omega_Q r^Q; the Monte Carlo volume estimators converge here.
inline double lebesgue_ball_volume(const HeisSpace& space, double r)
{
    if (!(r > 0.0) || !std::isfinite(r))
    {
        throw DomainError("lebesgue_ball_volume: r must be positive and finite");
    }
    const double nd = space.n;
    return std::pow(std::numbers::pi, nd) * gamma_function(nd / 2.0) * gamma_function(1.5)
           / (gamma_function(nd) * gamma_function((nd + 3.0) / 2.0)) * std::pow(r, space.Q);
}

}  // namespace hhsharp

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "hhsharp/counter_rng.hpp"
#include "hhsharp/heis_geometry.hpp"
#include "hhsharp/quadrature.hpp"

namespace hhsharp
{

/// Stream ids keep the different Monte Carlo consumers of one seed apart.
enum class RngStream : std::uint64_t
{
    ball = 1,
    volume = 2,
    geometry = 3,
    probe = 4,
    identity_check = 5,
};

/// Monte Carlo points of H^n together with how they were drawn.
struct SampleBatch
{
    std::vector<HeisPoint> points;
    std::uint64_t seed = 0;
    double acceptance_rate = 1.0;
    std::uint64_t attempts = 0;

    /// Binomial standard error of the acceptance rate.
    double acceptance_standard_error() const
    {
        const double p = acceptance_rate;
        return attempts ? std::sqrt(p * (1.0 - p) / static_cast<double>(attempts)) : 0.0;
    }
};

namespace detail
{

// Runs body(i) for i in [0, count) over `threads` workers with contiguous
// chunks; body must only touch slot i.
template <class Body>
void for_each_index(std::size_t count, unsigned threads, const Body& body)
{
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1)
    {
        for (std::size_t i = 0; i < count; ++i)
        {
            body(i);
        }
        return;
    }
    std::vector<std::jthread> workers;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t)
    {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        workers.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i)
            {
                body(i);
            }
        });
    }
}

// Rejection draw of sample `index` from the box [-1,1]^{2n} x [-1,1].
inline std::pair<std::vector<double>, std::uint32_t> draw_unit_ball(const CounterRng& rng, int n,
                                                                   std::uint64_t index)
{
    const std::size_t dim = 2 * static_cast<std::size_t>(n) + 1;
    std::vector<double> x(dim);
    for (std::uint32_t attempt = 0;; ++attempt)
    {
        for (std::size_t k = 0; k < dim; ++k)
        {
            x[k] = 2.0 * rng.uniform(index, attempt, static_cast<std::uint32_t>(k)) - 1.0;
        }
        double horizontal = 0.0;
        for (std::size_t k = 0; k + 1 < dim; ++k)
        {
            horizontal += x[k] * x[k];
        }
        const double gauge4 = horizontal * horizontal + x[dim - 1] * x[dim - 1];
        if (gauge4 <= 1.0 && gauge4 > 0.0)
        {
            return {x, attempt + 1};
        }
    }
}

}  // namespace detail

/// Uniform points of the Koranyi unit ball by rejection from the enclosing
/// box. Sample i depends only on (seed, i), so the batch is identical for any
/// thread count.
inline SampleBatch mc_ball_sample(const HeisSpace& space, std::size_t count, std::uint64_t seed,
                                  unsigned threads = 1)
{
    if (count < 1)
    {
        throw DomainError("mc_ball_sample: count must be >= 1");
    }
    const CounterRng rng(seed, static_cast<std::uint64_t>(RngStream::ball));
    std::vector<std::vector<double>> coords(count);
    std::vector<std::uint32_t> attempts(count);
    detail::for_each_index(count, threads, [&](std::size_t i) {
        auto [x, tries] = detail::draw_unit_ball(rng, space.n, i);
        coords[i] = std::move(x);
        attempts[i] = tries;
    });
    SampleBatch batch;
    batch.seed = seed;
    batch.points.reserve(count);
    for (auto& c : coords)
    {
        batch.points.emplace_back(std::move(c));
    }
    for (std::uint32_t a : attempts)
    {
        batch.attempts += a;
    }
    batch.acceptance_rate = static_cast<double>(count) / static_cast<double>(batch.attempts);
    return batch;
}

/// Points on the Koranyi unit sphere distributed as sigma / omega_Q: a
/// uniform ball point pushed out by the dilation delta_{1/|x|_h}.
inline SampleBatch mc_sphere_sample(const HeisSpace& space, std::size_t count, std::uint64_t seed,
                                    unsigned threads = 1)
{
    SampleBatch batch = mc_ball_sample(space, count, seed, threads);
    for (auto& x : batch.points)
    {
        x = dilate(1.0 / koranyi_norm(x), x);
    }
    return batch;
}

/// Hit-or-miss volume of B(0, radius): box [-r,r]^{2n} x [-r^2,r^2], pure
/// binomial standard error.
inline Estimate mc_ball_volume(const HeisSpace& space, double radius, std::size_t count, std::uint64_t seed)
{
    if (!(radius > 0.0) || count < 1)
    {
        throw DomainError("mc_ball_volume: need radius > 0 and count >= 1");
    }
    const CounterRng rng(seed, static_cast<std::uint64_t>(RngStream::volume));
    const std::size_t dim = 2 * static_cast<std::size_t>(space.n) + 1;
    std::vector<double> x(dim);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < count; ++i)
    {
        for (std::size_t k = 0; k + 1 < dim; ++k)
        {
            x[k] = radius * (2.0 * rng.uniform(i, 0, static_cast<std::uint32_t>(k)) - 1.0);
        }
        x[dim - 1] = radius * radius * (2.0 * rng.uniform(i, 0, static_cast<std::uint32_t>(dim - 1)) - 1.0);
        if (koranyi_norm(HeisPoint(x)) <= radius)
        {
            ++hits;
        }
    }
    const double box = std::pow(2.0 * radius, 2.0 * space.n) * 2.0 * radius * radius;
    const double frac = static_cast<double>(hits) / static_cast<double>(count);
    return {box * frac, box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(count))};
}

/// Mean and standard error of h over a batch.
template <class Fn>
Estimate sample_mean(const SampleBatch& batch, const Fn& h)
{
    const double n = static_cast<double>(batch.points.size());
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t k = 0;
    for (const auto& x : batch.points)
    {
        ++k;
        const double v = h(x);
        const double delta = v - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (v - mean);
    }
    const double var = k > 1 ? m2 / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

}  // namespace hhsharp

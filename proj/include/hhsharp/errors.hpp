#pragma once

#include <stdexcept>
#include <string>

namespace hhsharp
{

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain (r <= 0, p <= 1, ...).
class DomainError : public Error
{
  public:
    using Error::Error;
};

/// Two points (or a point and a space) disagree on n.
class DimensionMismatch : public Error
{
  public:
    using Error::Error;
};

/// Raised from decay metadata before any numerics run.
class DivergentIntegral : public Error
{
  public:
    using Error::Error;
};

/// Adaptive refinement ran out of subdivisions; keeps the best estimate.
class ToleranceNotReached : public Error
{
  public:
    ToleranceNotReached(const std::string& what, double best, double err)
        : Error(what), best_estimate(best), error_estimate(err)
    {
    }

    double best_estimate;
    double error_estimate;
};

/// A weight moment in a sharp constant is infinite.
class UnboundedOperator : public Error
{
  public:
    using Error::Error;
};

}  // namespace hhsharp

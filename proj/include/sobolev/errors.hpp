#pragma once

#include <stdexcept>
#include <string>

namespace sobolev
{

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Spectral truncation too coarse for the requested accuracy.
class TruncationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Input lies on the extremizer manifold, so a stability ratio is undefined.
class OnManifoldError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Iterative method gave up; carries the best iterate found.
class ConvergenceError : public std::runtime_error
{
  public:
    ConvergenceError(const std::string& what, double best_x, double best_value)
        : std::runtime_error(what), best_x_(best_x), best_value_(best_value)
    {
    }

    double best_x() const noexcept { return best_x_; }
    double best_value() const noexcept { return best_value_; }

  private:
    double best_x_;
    double best_value_;
};

} // namespace sobolev

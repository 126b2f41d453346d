#pragma once

// Reference implementations kept independent of the library.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace oracle
{

inline double sphere_area(int n)
{
    return 2.0 * std::pow(std::numbers::pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

inline double beta(double a, double b)
{
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

/// Sharp constant via std::lgamma.
inline double sharp_constant(int N, double s)
{
    const double lg = std::lgamma(0.5 * (N + s)) - std::lgamma(0.5 * (N - s));
    return std::exp(lg) * std::pow(sphere_area(N), s / N);
}

inline double eigenvalue(int N, double s, int k)
{
    return std::exp(std::lgamma(0.5 * (N + s) + k) - std::lgamma(0.5 * (N - s) + k));
}

namespace detail
{
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth, int min_depth)
{
    const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left  = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || (min_depth <= 0 && std::abs(left + right - whole) <= 15.0 * tol))
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, min_depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, min_depth - 1);
}
} // namespace detail

/// Adaptive Simpson on [a, b]; the first levels always split.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12)
{
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, 50, 6);
}

/// Integral over S^N of a zonal g(t) by the substitution t = cos(theta).
inline double sphere_integral(int N, const std::function<double(double)>& g, double tol = 1e-12)
{
    if (N == 1)
        return 2.0 * simpson([&](double th) { return g(std::cos(th)); }, 0.0, std::numbers::pi, tol);
    return sphere_area(N - 1) *
           simpson([&](double th) { return g(std::cos(th)) * std::pow(std::sin(th), N - 1); }, 0.0,
                   std::numbers::pi, tol);
}

/// Relative error with an absolute floor.
inline double rel(double got, double want, double floor = 1e-300)
{
    return std::abs(got - want) / std::max(std::abs(want), floor);
}

} // namespace oracle

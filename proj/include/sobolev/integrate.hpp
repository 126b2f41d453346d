#pragma once

#include <functional>

namespace sobolev
{

struct IntegrationOptions
{
    double abs_tol   = 1e-13;
    double rel_tol   = 1e-13;
    int max_segments = 4000;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const IntegrationOptions& opts = {});

/// Integral of f over [a, infinity) via r = a + tan(phi), phi in [0, pi/2).
/// f must decay fast enough for the transformed integrand to stay bounded.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             const IntegrationOptions& opts = {});

} // namespace sobolev

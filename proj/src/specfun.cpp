#include "sobolev/specfun.hpp"

#include "sobolev/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace sobolev
{

SobolevParams::SobolevParams(int N, double s) : N_(N), s_(s)
{
    if (N < 1)
        throw DomainError("dimension N must be >= 1, got " + std::to_string(N));
    if (!(s > 0.0) || !(s < N))
        throw DomainError("order s must satisfy 0 < s < N, got s = " + std::to_string(s) +
                          ", N = " + std::to_string(N));
}

double log_gamma(double x)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("log_gamma requires a finite positive argument");

    static constexpr std::array<double, 14> cof = {
        57.1562356658629235,      -59.5979603554754912,      14.1360979747417471,
        -0.491913816097620199,    .339946499848118887e-4,    .465236289270485756e-4,
        -.983744753048795646e-4,  .158088703224912494e-3,    -.210264441724104883e-3,
        .217439618115212643e-3,   -.164318106536763890e-3,   .844182239838527433e-4,
        -.261908384015814087e-4,  .368991826595316234e-5};

    double y   = x;
    double tmp = x + 5.24218750000000000;
    tmp        = (x + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (double c : cof)
        ser += c / ++y;
    return tmp + std::log(2.5066282746310005 * ser / x);
}

double gamma_ratio(double a, double b)
{
    return std::exp(log_gamma(a) - log_gamma(b));
}

double sphere_area(int n)
{
    if (n < 1)
        throw DomainError("sphere_area requires n >= 1");
    const double h = 0.5 * (n + 1);
    return 2.0 * std::exp(h * std::log(std::numbers::pi) - log_gamma(h));
}

double boundary_sphere_area(int N)
{
    if (N < 1)
        throw DomainError("boundary_sphere_area requires N >= 1");
    return N == 1 ? 2.0 : sphere_area(N - 1);
}

double unit_ball_volume(int N)
{
    return boundary_sphere_area(N) / N;
}

double sharp_constant(const SobolevParams& p)
{
    const double N = p.N();
    const double s = p.s();
    const double log_s = s * std::numbers::ln2 + 0.5 * s * std::log(std::numbers::pi) +
                         log_gamma(0.5 * (N + s)) - log_gamma(0.5 * (N - s)) +
                         (s / N) * (log_gamma(0.5 * N) - log_gamma(N));
    return std::exp(log_s);
}

double eigenvalue(const SobolevParams& p, int k)
{
    if (k < 0)
        throw DomainError("eigenvalue index k must be >= 0");
    const double N = p.N();
    const double s = p.s();
    return gamma_ratio(0.5 * (N + s) + k, 0.5 * (N - s) + k);
}

std::int64_t binomial(std::int64_t m, std::int64_t n)
{
    if (m < 0 || n < 0)
        throw DomainError("binomial arguments must be non-negative");
    if (m < n)
        return 0;
    n = std::min(n, m - n);
    __int128 result = 1;
    for (std::int64_t i = 0; i < n; ++i)
    {
        // Exact: result * (m - i) is divisible by (i + 1) at every step.
        result = result * (m - i) / (i + 1);
        if (result > std::numeric_limits<std::int64_t>::max())
            throw DomainError("binomial(" + std::to_string(m) + ", " + std::to_string(n) +
                              ") overflows 64-bit integers");
    }
    return static_cast<std::int64_t>(result);
}

std::int64_t multiplicity(int N, int k)
{
    if (N < 1 || k < 0)
        throw DomainError("multiplicity requires N >= 1 and k >= 0");
    const std::int64_t hi = binomial(std::int64_t{k} + N, N);
    const std::int64_t lo = k + N - 2 >= 0 ? binomial(std::int64_t{k} + N - 2, N) : 0;
    return hi - lo;
}

double local_constant(const SobolevParams& p)
{
    return 2.0 * p.s() / (p.N() + p.s() + 2.0);
}

double lambda1_identity_residual(const SobolevParams& p)
{
    const double q = p.q();
    return (q - 1.0) * sharp_constant(p) * std::pow(sphere_area(p.N()), (2.0 - q) / q) -
           eigenvalue(p, 1);
}

} // namespace sobolev

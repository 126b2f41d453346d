#include "sobolev/weaknorm.hpp"

#include "sobolev/errors.hpp"
#include "sobolev/integrate.hpp"
#include "sobolev/deficit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace sobolev
{
namespace
{

double ball_volume(int N, double r)
{
    return unit_ball_volume(N) * std::pow(r, N);
}

} // namespace

double weak_norm(const Eigen::Ref<const Eigen::VectorXd>& values,
                 const Eigen::Ref<const Eigen::VectorXd>& measures, const SobolevParams& p)
{
    if (values.size() != measures.size())
        throw DomainError("weak_norm needs one measure per value");
    if (values.size() == 0)
        return 0.0;
    if ((measures.array() <= 0.0).any())
        throw DomainError("cell measures must be positive");
    if ((values.array() < 0.0).any())
        throw DomainError("weak_norm expects |u| (nonnegative values)");

    std::vector<Eigen::Index> order(values.size());
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return values[a] > values[b]; });

    const double sigma = p.s() / p.N();
    double mass = 0.0, volume = 0.0, best = 0.0;
    for (Eigen::Index idx : order)
    {
        mass += values[idx] * measures[idx];
        volume += measures[idx];
        best = std::max(best, mass * std::pow(volume, -sigma));
    }
    return best;
}

RadialCells radial_cells(const RadialFunction& u, double R, int shells)
{
    if (!(R > 0.0) || shells < 1)
        throw DomainError("radial_cells needs R > 0 and at least one shell");
    const int N         = u.params().N();
    const double area   = boundary_sphere_area(N);
    const double h      = R / shells;
    // 4-point Gauss-Legendre on each shell.
    static constexpr double gx[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                     0.8611363115940526};
    static constexpr double gw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                     0.3478548451374538};
    RadialCells cells{Eigen::VectorXd(shells), Eigen::VectorXd(shells)};
    for (int j = 0; j < shells; ++j)
    {
        const double a = j * h, b = (j + 1) * h;
        double integral = 0.0;
        for (int g = 0; g < 4; ++g)
        {
            const double r = 0.5 * (a + b) + 0.5 * h * gx[g];
            integral += gw[g] * std::abs(u(r)) * std::pow(r, N - 1);
        }
        integral *= 0.5 * h * area;
        const double measure = ball_volume(N, b) - ball_volume(N, a);
        cells.measures[j]    = measure;
        cells.values[j]      = integral / measure;
    }
    return cells;
}

double ball_threshold_sup(const RadialFunction& u, double R, int grid)
{
    if (!(R > 0.0) || grid < 2)
        throw DomainError("ball_threshold_sup needs R > 0 and grid >= 2");
    const int N         = u.params().N();
    const double sigma  = u.params().s() / N;
    const double area   = boundary_sphere_area(N);
    const IntegrationOptions opts{1e-15, 1e-13, 200};
    auto shell_mass = [&](double a, double b) {
        return area * integrate([&](double r) { return std::abs(u(r)) * std::pow(r, N - 1); }, a, b,
                                opts);
    };
    auto ratio = [&](double mass, double r) { return mass * std::pow(ball_volume(N, r), -sigma); };

    std::vector<double> radii(grid + 1), mass(grid + 1, 0.0);
    for (int j = 0; j <= grid; ++j)
        radii[j] = R * j / grid;
    int best_j  = 1;
    double best = 0.0;
    for (int j = 1; j <= grid; ++j)
    {
        mass[j]        = mass[j - 1] + shell_mass(radii[j - 1], radii[j]);
        const double f = ratio(mass[j], radii[j]);
        if (f > best)
        {
            best   = f;
            best_j = j;
        }
    }

    // Golden-section refinement on the bracket around the best grid radius.
    const int lo_j = best_j - 1;
    double lo      = radii[lo_j];
    double hi      = radii[std::min(best_j + 1, grid)];
    auto F         = [&](double r) { return ratio(mass[lo_j] + shell_mass(radii[lo_j], r), r); };
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = F(x1), f2 = F(x2);
    for (int it = 0; it < 100 && hi - lo > 1e-13 * R; ++it)
    {
        if (f1 >= f2)
        {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = F(x1);
        }
        else
        {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = F(x2);
        }
    }
    return std::max({best, f1, f2});
}

double U_weak_norm(const SobolevParams& p)
{
    const double N = p.N();
    const double s = p.s();
    return std::pow(boundary_sphere_area(p.N()), 1.0 - s / N) * std::pow(N, s / N) / s;
}

double tail_lq(const SobolevParams& p, double lambda, double r0)
{
    if (!(lambda > 0.0) || !(r0 > 0.0))
        throw DomainError("tail_lq needs lambda > 0 and r0 > 0");
    const int N        = p.N();
    const double lower = std::pow(lambda, 1.0 / p.half_gap()) * r0;
    // r = tan(phi): r^{N-1} (1 + r^2)^{-N} dr = (sin phi cos phi)^{N-1} dphi.
    const double integral = integrate(
        [N](double phi) { return std::pow(std::sin(phi) * std::cos(phi), N - 1); },
        std::atan(lower), 0.5 * std::numbers::pi, {1e-15, 1e-14, 4000});
    return boundary_sphere_area(N) * integral;
}

WeakNormConstants compute_constants(const SobolevParams& p)
{
    const int N = p.N();
    const double q     = p.q();
    const double rootS = std::sqrt(sharp_constant(p));
    WeakNormConstants c;
    c.r0        = std::pow(1.0 / unit_ball_volume(N), 1.0 / N);
    c.tail_root = std::pow(tail_lq(p, 1.0, 1.0), 1.0 / q);
    // rho / (sqrt(S)(1 - rho)) = tail_root is Moebius in rho.
    c.rho    = c.tail_root * rootS / (1.0 + c.tail_root * rootS);
    c.U_weak = U_weak_norm(p);
    c.C1 = rootS * (1.0 - c.rho) *
           std::pow(boundary_sphere_area(N) / (N * std::pow(2.0 * c.r0, N)), 1.0 / q);
    c.C2 = (1.0 + c.rho) / c.C1 * c.U_weak + 1.0 / rootS;
    c.C0 = std::max(c.C2, 1.0 / (c.rho * rootS));
    c.C  = 1.0 / (c.C0 * c.C0);
    return c;
}

double coefficient_tail(const ZonalFunction& v)
{
    const double total = v.l2_norm();
    if (total == 0.0)
        return 0.0;
    const int first = 3 * v.K() / 4 + 1;
    if (first > v.K())
        return 0.0;
    return v.coeffs().tail(v.K() - first + 1).norm() / total;
}

Theorem2Case verify_theorem2(const RadialFunction& u, const QuadratureRule& rule, int K,
                             const WeakNormConstants& constants, const Theorem2Options& opts)
{
    if (!u.compact())
        throw DomainError("verify_theorem2 needs a compactly supported profile");
    const SobolevParams& p = u.params();

    const ZonalFunction v = pullback_to_sphere(u, rule, K);
    Theorem2Case out;
    out.profile          = u.name();
    out.coefficient_tail = coefficient_tail(v);
    if (out.coefficient_tail > opts.tail_tolerance)
        throw TruncationError("profile '" + u.name() + "' is under-resolved at K = " +
                              std::to_string(K) + " (spectral tail " +
                              std::to_string(out.coefficient_tail) + "); increase K");

    out.lhs = deficit(v, rule);

    const double a    = u.support_radius();
    out.omega_measure = unit_ball_volume(p.N()) * std::pow(a, p.N());
    const RadialCells cells = radial_cells(u, a, opts.shells);
    out.weak_norm     = weak_norm(cells.values, cells.measures, p);
    out.rhs = constants.C * std::pow(out.omega_measure, -2.0 / p.q()) * out.weak_norm * out.weak_norm;
    out.margin = out.lhs - out.rhs;
    out.passed = out.margin >= -opts.margin_rel_tol * std::abs(out.lhs);
    return out;
}

} // namespace sobolev

#include "sobolev/conformal.hpp"

#include "sobolev/errors.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace sobolev
{
namespace
{

double smooth_step_down(double x)
{
    // 1 on x <= 1/2, 0 on x >= 1, C-infinity in between.
    if (x <= 0.5)
        return 1.0;
    if (x >= 1.0)
        return 0.0;
    const double a = std::exp(-1.0 / (1.0 - x));
    const double b = std::exp(-1.0 / (x - 0.5));
    return a / (a + b);
}

std::string format_param(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

ManifoldPoint ManifoldPoint::make(double c, double t0)
{
    if (c == 0.0 || !std::isfinite(c))
        throw DomainError("manifold amplitude c must be finite and nonzero");
    if (!(std::abs(t0) < 1.0))
        throw DomainError("manifold parameter t0 must satisfy |t0| < 1");
    return {c, t0};
}

double manifold_value(const SobolevParams& p, const ManifoldPoint& m, double t)
{
    return m.c * std::pow(1.0 - m.t0 * t, -p.half_gap());
}

RadialFunction::RadialFunction(SobolevParams params, std::function<double(double)> profile,
                               double support_radius, std::string name)
    : params_(params), profile_(std::move(profile)), support_radius_(support_radius),
      name_(std::move(name))
{
    if (!(support_radius_ > 0.0))
        throw DomainError("support radius must be positive");
}

RadialFunction gaussian_profile(const SobolevParams& p, double sigma)
{
    if (!(sigma > 0.0))
        throw DomainError("gaussian width must be positive");
    return {p, [sigma](double r) { return std::exp(-(r * r) / (sigma * sigma)); },
            std::numeric_limits<double>::infinity(), "gaussian:" + format_param(sigma)};
}

RadialFunction bump_profile(const SobolevParams& p, double a, double sharpness)
{
    if (!(a > 0.0) || !(sharpness > 0.0))
        throw DomainError("bump radius and sharpness must be positive");
    return {p,
            [a, sharpness](double r) {
                const double x = r / a;
                return x < 1.0 ? std::exp(-sharpness / (1.0 - x * x)) : 0.0;
            },
            a,
            "bump:" + format_param(a) + (sharpness == 1.0 ? "" : "," + format_param(sharpness))};
}

RadialFunction extremizer_profile(const SobolevParams& p, double lambda)
{
    if (!(lambda > 0.0))
        throw DomainError("extremizer scale must be positive");
    const double mu = std::pow(lambda, 1.0 / p.half_gap());
    const double e  = p.half_gap();
    return {p, [=](double r) { return lambda * std::pow(1.0 + mu * mu * r * r, -e); },
            std::numeric_limits<double>::infinity(), "extremizer:" + format_param(lambda)};
}

RadialFunction cutoff_extremizer_profile(const SobolevParams& p, double lambda, double a)
{
    if (!(lambda > 0.0) || !(a > 0.0))
        throw DomainError("cutoff extremizer needs positive scale and radius");
    const RadialFunction U = extremizer_profile(p, lambda);
    return {p, [U, a](double r) { return U(r) * smooth_step_down(r / a); }, a,
            "cutoff-extremizer:" + format_param(lambda) + "," + format_param(a)};
}

RadialFunction dilate(const RadialFunction& u, double lambda)
{
    if (!(lambda > 0.0))
        throw DomainError("dilation factor must be positive");
    const double mu = std::pow(lambda, 1.0 / u.params().half_gap());
    return {u.params(), [u, lambda, mu](double r) { return lambda * u(mu * r); },
            u.support_radius() / mu, u.name() + "@" + format_param(lambda)};
}

RadialFunction parse_profile(const SobolevParams& p, std::string_view spec)
{
    std::string text(spec);
    if (text.rfind("profile=", 0) == 0)
        text = text.substr(8);
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos)
    {
        std::stringstream rest(text.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ','))
        {
            try
            {
                std::size_t used = 0;
                args.push_back(std::stod(item, &used));
                if (used != item.size())
                    throw std::invalid_argument(item);
            }
            catch (const std::exception&)
            {
                throw DomainError("bad numeric parameter '" + item + "' in profile '" + text + "'");
            }
        }
    }
    auto want = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi)
            throw DomainError("profile '" + name + "' takes " + std::to_string(lo) +
                              (lo == hi ? "" : "-" + std::to_string(hi)) + " parameter(s)");
    };
    if (name == "gaussian")
    {
        want(0, 1);
        return gaussian_profile(p, args.empty() ? 1.0 : args[0]);
    }
    if (name == "bump")
    {
        want(1, 2);
        return bump_profile(p, args[0], args.size() > 1 ? args[1] : 1.0);
    }
    if (name == "extremizer")
    {
        want(0, 1);
        return extremizer_profile(p, args.empty() ? 1.0 : args[0]);
    }
    if (name == "cutoff-extremizer")
    {
        want(2, 2);
        return cutoff_extremizer_profile(p, args[0], args[1]);
    }
    throw DomainError("unknown profile '" + name + "'");
}

double stereo_radius(double t)
{
    if (!(std::abs(t) <= 1.0))
        throw DomainError("latitude must lie in [-1, 1]");
    if (t == -1.0)
        return std::numeric_limits<double>::infinity();
    return std::sqrt((1.0 - t) / (1.0 + t));
}

double stereo_latitude(double r)
{
    if (std::isinf(r))
        return -1.0;
    const double r2 = r * r;
    return (1.0 - r2) / (1.0 + r2);
}

double stereo_jacobian(int N, double r)
{
    return std::pow(2.0 / (1.0 + r * r), N);
}

ZonalFunction pullback_to_sphere(const RadialFunction& u, const QuadratureRule& rule, int K)
{
    const SobolevParams& p = u.params();
    if (rule.N != p.N())
        throw DomainError("quadrature rule dimension does not match N");
    Eigen::VectorXd samples(rule.size());
    for (Eigen::Index i = 0; i < rule.size(); ++i)
    {
        const double r = stereo_radius(rule.nodes[i]);
        samples[i]     = std::pow(0.5 * (1.0 + r * r), p.half_gap()) * u(r);
        if (!std::isfinite(samples[i]))
            throw DomainError("radial profile '" + u.name() + "' is not finite at r = " +
                              std::to_string(r));
    }
    return analyze(samples, rule, p, K);
}

double radial_lq_power(const RadialFunction& u, double q, const QuadratureRule& rule)
{
    const int N = u.params().N();
    return rule.integrate([&](double t) {
        const double r = stereo_radius(t);
        return std::pow(std::abs(u(r)), q) / stereo_jacobian(N, r);
    });
}

ZonalFunction manifold_zonal(const SobolevParams& p, const ManifoldPoint& m,
                             const QuadratureRule& rule, int K)
{
    const ManifoldPoint checked = ManifoldPoint::make(m.c, m.t0);
    Eigen::VectorXd samples(rule.size());
    for (Eigen::Index i = 0; i < rule.size(); ++i)
        samples[i] = manifold_value(p, checked, rule.nodes[i]);
    return analyze(samples, rule, p, K);
}

ZonalFunction conformal_shift(const ZonalFunction& u, double t0, const QuadratureRule& rule, int K)
{
    if (!(std::abs(t0) < 1.0))
        throw DomainError("conformal shift parameter must satisfy |t0| < 1");
    const SobolevParams& p = u.params();
    const double root      = std::sqrt(1.0 - t0 * t0);
    Eigen::VectorXd samples(rule.size());
    for (Eigen::Index i = 0; i < rule.size(); ++i)
    {
        const double t     = rule.nodes[i];
        const double denom = 1.0 - t0 * t;
        const double image = std::clamp((t - t0) / denom, -1.0, 1.0);
        samples[i]         = std::pow(root / denom, p.half_gap()) * synthesize(u, image);
    }
    return analyze(samples, rule, p, K);
}

} // namespace sobolev

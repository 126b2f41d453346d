#pragma once

#include "sobolev/zonal.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <string_view>

namespace sobolev
{

/// Axial extremizer u_{c,theta}(xi) = c (1 - t0 * t)^{-(N-s)/2}, theta = t0 * pole.
struct ManifoldPoint
{
    double c  = 1.0;
    double t0 = 0.0;

    /// Throws DomainError unless c != 0 and |t0| < 1.
    static ManifoldPoint make(double c, double t0);
};

/// Evaluate u_{c,theta} at latitude t.
double manifold_value(const SobolevParams& p, const ManifoldPoint& m, double t);

/// A radial function on R^N, r -> u(r), vanishing beyond support_radius.
class RadialFunction
{
  public:
    RadialFunction(SobolevParams params, std::function<double(double)> profile,
                   double support_radius = std::numeric_limits<double>::infinity(),
                   std::string name = "custom");

    const SobolevParams& params() const noexcept { return params_; }
    double support_radius() const noexcept { return support_radius_; }
    bool compact() const noexcept { return std::isfinite(support_radius_); }
    const std::string& name() const noexcept { return name_; }

    double operator()(double r) const
    {
        return r >= support_radius_ ? 0.0 : profile_(r);
    }

  private:
    SobolevParams params_;
    std::function<double(double)> profile_;
    double support_radius_;
    std::string name_;
};

/// exp(-r^2 / sigma^2).
RadialFunction gaussian_profile(const SobolevParams& p, double sigma = 1.0);
/// exp(-sharpness / (1 - (r/a)^2)) on the ball of radius a.
RadialFunction bump_profile(const SobolevParams& p, double a, double sharpness = 1.0);
/// U_{lambda,0}(x) = lambda U(lambda^{2/(N-s)} x), U(x) = (1 + |x|^2)^{-(N-s)/2}.
RadialFunction extremizer_profile(const SobolevParams& p, double lambda = 1.0);
/// U_{lambda,0} multiplied by a smooth cutoff equal to 1 on r <= a/2 and 0 for r >= a.
RadialFunction cutoff_extremizer_profile(const SobolevParams& p, double lambda, double a);

/// u_lambda(x) = lambda u(lambda^{2/(N-s)} x); support shrinks by lambda^{-2/(N-s)}.
RadialFunction dilate(const RadialFunction& u, double lambda);

/// Parse `name:param,...` (an optional leading `profile=` is accepted).
/// Names: gaussian[:sigma], bump:a[,sharpness], extremizer[:lambda], cutoff-extremizer:lambda,a.
RadialFunction parse_profile(const SobolevParams& p, std::string_view spec);

/// Radius r = sqrt((1-t)/(1+t)) of the point of R^N projecting to latitude t.
/// t = -1 maps to +infinity.
double stereo_radius(double t);

/// Latitude t = (1 - r^2)/(1 + r^2) of the image of a point at radius r.
double stereo_latitude(double r);

/// Jacobian J_pi(r) = (2 / (1 + r^2))^N of the inverse stereographic projection.
double stereo_jacobian(int N, double r);

/// Sphere representative v = P^{-1} u: v(t) = ((1 + r^2)/2)^{(N-s)/2} u(r).
ZonalFunction pullback_to_sphere(const RadialFunction& u, const QuadratureRule& rule, int K);

/// ||u||_{L^q(R^N)}^q computed by transporting the sphere rule to R^N.
double radial_lq_power(const RadialFunction& u, double q, const QuadratureRule& rule);

/// Zonal expansion of the axial extremizer u_{c,theta}.
ZonalFunction manifold_zonal(const SobolevParams& p, const ManifoldPoint& m,
                             const QuadratureRule& rule, int K);

/// The axial conformal map tau(t) = (t - t0)/(1 - t0 t); u -> J_tau^{1/q} (u o tau).
/// Corresponds to the dilation x -> sqrt((1+t0)/(1-t0)) x on R^N.
ZonalFunction conformal_shift(const ZonalFunction& u, double t0, const QuadratureRule& rule, int K);

} // namespace sobolev

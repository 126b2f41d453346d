#pragma once

#include "sobolev/conformal.hpp"

#include <string>

namespace sobolev
{

/// Explicit constants of the weak-norm remainder inequality on domains of
/// finite measure. All of them depend on (N, s) only.
struct WeakNormConstants
{
    double rho    = 0.0; ///< in (0, 1), rho / (sqrt(S)(1 - rho)) = tail_root
    double r0     = 0.0; ///< radius of the ball of unit measure
    double U_weak = 0.0; ///< |U|_{w,R^N}
    double tail_root = 0.0; ///< (|S^{N-1}| int_1^inf r^{N-1}(1+r^2)^{-N} dr)^{1/q}
    double C1 = 0.0;
    double C2 = 0.0;
    double C0 = 0.0;
    double C  = 0.0; ///< C0^{-2}
};

/// sup over A of |A|^{-s/N} int_A |u| for a piecewise-constant function given
/// by cell values (>= 0) and cell measures (> 0). By the bathtub principle the
/// sup runs over super-level sets, i.e. prefixes of the cells sorted by value.
double weak_norm(const Eigen::Ref<const Eigen::VectorXd>& values,
                 const Eigen::Ref<const Eigen::VectorXd>& measures, const SobolevParams& p);

/// Shell decomposition of a radial function on the ball of radius R:
/// `shells` equal-width shells, values are shell averages.
struct RadialCells
{
    Eigen::VectorXd values;
    Eigen::VectorXd measures;
};
RadialCells radial_cells(const RadialFunction& u, double R, int shells);

/// sup over balls B_r, r <= R, of |B_r|^{-s/N} int_{B_r} |u| for radially
/// nonincreasing u (dense threshold scan refined by golden section).
double ball_threshold_sup(const RadialFunction& u, double R, int grid = 2000);

/// |U|_{w,R^N} of the standard extremizer. The ball ratio increases with the
/// radius, so the sup is its limit |S^{N-1}|^{1-s/N} N^{s/N} / s.
double U_weak_norm(const SobolevParams& p);

/// ||U_{lambda,0}||_{L^q(R^N \ B_{r0})}^q = |S^{N-1}| int_{lambda^{2/(N-s)} r0}^inf r^{N-1}(1+r^2)^{-N} dr.
double tail_lq(const SobolevParams& p, double lambda, double r0);

WeakNormConstants compute_constants(const SobolevParams& p);

struct Theorem2Case
{
    std::string profile;
    double lhs = 0.0;            ///< ||u||^2 - S |u|_q^2
    double rhs = 0.0;            ///< C |Omega|^{-2/q} |u|_w^2
    double margin = 0.0;         ///< lhs - rhs
    double omega_measure = 0.0;  ///< |Omega| for the support ball
    double weak_norm = 0.0;      ///< |u|_{w,Omega}
    double coefficient_tail = 0.0;
    bool passed = false;         ///< margin >= -1e-6 lhs
};

struct Theorem2Options
{
    int shells             = 20000;
    double tail_tolerance  = 1e-6;
    double margin_rel_tol  = 1e-6;
};

/// Check the weak-norm remainder inequality for a compactly supported radial
/// u, with Omega the support ball. Throws TruncationError ("increase K") when
/// the top quarter of the zonal spectrum carries more than tail_tolerance of
/// the L2 norm.
Theorem2Case verify_theorem2(const RadialFunction& u, const QuadratureRule& rule, int K,
                             const WeakNormConstants& constants, const Theorem2Options& opts = {});

/// Relative L2 weight of coefficients with k > 3K/4.
double coefficient_tail(const ZonalFunction& v);

} // namespace sobolev

#pragma once

#include "sobolev/conformal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sobolev
{

/// Psi(u) = ||u||_*^2 - S |u|_q^2, nonnegative by the Sobolev inequality and
/// zero exactly on the extremizer manifold.
double deficit(const ZonalFunction& u, const QuadratureRule& rule);

/// Directional derivative Psi'(u) v. Throws DomainError for u = 0.
double gradient_form(const ZonalFunction& u, const ZonalFunction& v, const QuadratureRule& rule);

/// Second derivative Psi''(u)(v, w) (the full form, not one half of it).
double hessian_form(const ZonalFunction& u, const ZonalFunction& v, const ZonalFunction& w,
                    const QuadratureRule& rule);

struct DistanceOptions
{
    std::vector<double> starts = {-0.8, -0.4, 0.0, 0.4, 0.8};
    double t0_cap              = 0.95;
    double tolerance           = 1e-10;
    int max_iterations         = 200;
};

/// Axial distance d^ = min over c, |t0| <= cap of ||u - c g_{t0}||_*. This is an
/// upper bound for the distance to the full extremizer manifold.
struct DistanceResult
{
    double distance = 0.0;
    std::optional<ManifoldPoint> nearest; ///< empty when u = 0 or u is orthogonal to every g_{t0}
    bool boundary_hit = false;            ///< optimum sits on |t0| = cap
};

/// Multistart golden-section over t0 with c eliminated in closed form.
/// Throws ConvergenceError (carrying the best t0) if a cell fails to shrink.
DistanceResult distance(const ZonalFunction& u, const QuadratureRule& rule,
                        const DistanceOptions& opts = {});

struct DeficitReport
{
    double norm_star_sq = 0.0;
    double lq_norm      = 0.0;
    double deficit      = 0.0;
    double distance     = 0.0;
    std::optional<ManifoldPoint> nearest;
    std::optional<double> ratio;
    bool boundary_hit = false;
};

/// Deficit, axial distance and Psi / d^2. Throws OnManifoldError when
/// d^ <= 1e-9 ||u||_*.
DeficitReport stability_ratio(const ZonalFunction& u, const QuadratureRule& rule,
                              const DistanceOptions& opts = {});

/// Report fields without the on-manifold refusal (ratio left empty when d^ is tiny).
DeficitReport deficit_report(const ZonalFunction& u, const QuadratureRule& rule,
                             const DistanceOptions& opts = {});

/// Scan manifest for the empirical stability constant.
struct ScanConfig
{
    std::uint64_t seed = 1;
    int K              = 64;
    int M              = 0; ///< 0 selects 2K + 2

    /// Family (a): 1 + eps v with v a random combination of e_2..e_{normal_max_degree}.
    int normal_directions       = 60;
    int normal_max_degree       = 10;
    double normal_decay         = 0.6;
    std::vector<double> eps_grid = {1e-1, 1e-2, 1e-3};

    /// Family (b): coefficients N(0,1) * random_decay^k.
    int random_members  = 300;
    double random_decay = 0.6;

    /// Family (c): g_{t0} + g_{-t0} for t0 evenly spaced in [bubble_min, bubble_max].
    int bubble_members = 20;
    double bubble_min  = 0.1;
    double bubble_max  = 0.9;

    /// Worker threads; 0 reads SOBOLEV_THREADS, falling back to hardware concurrency.
    unsigned threads = 0;

    DistanceOptions distance;

    int quadrature_size() const { return M > 0 ? M : 2 * K + 2; }
    std::size_t member_count() const;
};

struct ScanMember
{
    std::string family;
    std::string label;
    ZonalFunction u;
};

struct ScanRecord
{
    std::size_t index = 0;
    std::string family;
    std::string label;
    std::optional<DeficitReport> report; ///< empty when skipped as on-manifold
};

struct ScanResult
{
    std::vector<ScanRecord> records;
    double alpha_hat       = 0.0;
    std::size_t skipped    = 0;
    std::size_t violations = 0; ///< sandwich d^2 >= Psi >= 0 broken beyond slack
};

/// The scan members in index order; deterministic for a given seed.
std::vector<ScanMember> scan_members(const SobolevParams& p, const ScanConfig& cfg,
                                     const QuadratureRule& rule);

/// Evaluate members in parallel and reduce in index order.
ScanResult run_scan(const SobolevParams& p, const ScanConfig& cfg,
                    const std::vector<ScanMember>& members, const QuadratureRule& rule);

/// Convenience: build members from cfg and scan them.
ScanResult run_scan(const SobolevParams& p, const ScanConfig& cfg);

/// Minimum stability ratio over the scan (alpha^). Not a certified bound.
double estimate_alpha(const SobolevParams& p, const ScanConfig& cfg);

/// Thread count: explicit value, else SOBOLEV_THREADS, else hardware concurrency.
unsigned resolve_threads(unsigned requested);

} // namespace sobolev

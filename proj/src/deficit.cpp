#include "sobolev/deficit.hpp"

#include "sobolev/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace sobolev
{
namespace
{

void require_nonzero(const Eigen::VectorXd& values)
{
    if (values.cwiseAbs().maxCoeff() == 0.0)
        throw DomainError("the derivative of Psi is undefined at u = 0");
}

void require_compatible(const ZonalFunction& u, const QuadratureRule& rule)
{
    if (rule.N != u.params().N())
        throw DomainError("quadrature rule dimension does not match N");
}

// sign(x) |x|^{e}
Eigen::ArrayXd signed_power(const Eigen::VectorXd& x, double e)
{
    return x.array().sign() * x.array().abs().pow(e);
}

struct AxialObjective
{
    const ZonalFunction& u;
    const QuadratureRule& rule;
    Eigen::MatrixXd weighted_basis; // B^T diag(w)
    Eigen::ArrayXd lambda;

    AxialObjective(const ZonalFunction& u_, const QuadratureRule& rule_)
        : u(u_), rule(rule_),
          weighted_basis(basis_matrix(rule_.N, u_.K(), rule_.nodes).transpose() *
                         rule_.weights.asDiagonal()),
          lambda(eigenvalues(u_.params(), u_.K()).array())
    {
    }

    Eigen::VectorXd extremizer(double t0) const
    {
        const double e = u.params().half_gap();
        Eigen::VectorXd samples =
            (1.0 - t0 * rule.nodes.array()).pow(-e).matrix();
        return weighted_basis * samples;
    }

    // Squared residual after eliminating the amplitude; also returns c*.
    std::pair<double, double> operator()(double t0) const
    {
        const Eigen::VectorXd g = extremizer(t0);
        const double gg         = (lambda * g.array().square()).sum();
        const double ug         = (lambda * u.coeffs().array() * g.array()).sum();
        const double c          = ug / gg;
        const double r2 = (lambda * (u.coeffs() - c * g).array().square()).sum();
        return {r2, c};
    }
};

} // namespace

double deficit(const ZonalFunction& u, const QuadratureRule& rule)
{
    require_compatible(u, rule);
    const double ns = norm_star(u);
    const double lq = norm_Lp(u, u.params().q(), rule);
    return ns * ns - sharp_constant(u.params()) * lq * lq;
}

double gradient_form(const ZonalFunction& u, const ZonalFunction& v, const QuadratureRule& rule)
{
    require_compatible(u, rule);
    const Eigen::VectorXd U = node_values(u, rule);
    require_nonzero(U);
    const Eigen::VectorXd V = node_values(v, rule);
    const double q          = u.params().q();
    const double lq         = norm_Lp_nodes(U, q, rule);
    const double nonlinear =
        (rule.weights.array() * signed_power(U, q - 1.0) * V.array()).sum();
    return 2.0 * inner_star(u, v) -
           2.0 * sharp_constant(u.params()) * std::pow(lq, 2.0 - q) * nonlinear;
}

double hessian_form(const ZonalFunction& u, const ZonalFunction& v, const ZonalFunction& w,
                    const QuadratureRule& rule)
{
    require_compatible(u, rule);
    const Eigen::VectorXd U = node_values(u, rule);
    require_nonzero(U);
    const Eigen::VectorXd V = node_values(v, rule);
    const Eigen::VectorXd W = node_values(w, rule);
    const double q          = u.params().q();
    const double S          = sharp_constant(u.params());
    const double lq         = norm_Lp_nodes(U, q, rule);
    const Eigen::ArrayXd wts  = rule.weights.array();
    const Eigen::ArrayXd u_q1 = signed_power(U, q - 1.0);
    const double int_v        = (wts * u_q1 * V.array()).sum();
    const double int_w        = (wts * u_q1 * W.array()).sum();
    const double int_vw = (wts * U.array().abs().pow(q - 2.0) * V.array() * W.array()).sum();
    const double half = inner_star(v, w) - S * (2.0 - q) * std::pow(lq, 2.0 - 2.0 * q) * int_v * int_w -
                        S * (q - 1.0) * std::pow(lq, 2.0 - q) * int_vw;
    return 2.0 * half;
}

DistanceResult distance(const ZonalFunction& u, const QuadratureRule& rule,
                        const DistanceOptions& opts)
{
    require_compatible(u, rule);
    if (u.coeffs().cwiseAbs().maxCoeff() == 0.0)
        return {0.0, std::nullopt, false};
    if (opts.starts.empty())
        throw DomainError("distance needs at least one multistart point");

    const AxialObjective objective(u, rule);
    std::vector<double> starts = opts.starts;
    std::sort(starts.begin(), starts.end());

    constexpr double inv_phi = 0.6180339887498949; // (sqrt(5) - 1) / 2
    double best_t0 = 0.0;
    double best_r2 = std::numeric_limits<double>::infinity();
    double best_c  = 0.0;
    auto consider  = [&](double t0) {
        const auto [r2, c] = objective(t0);
        if (r2 < best_r2)
        {
            best_r2 = r2;
            best_t0 = t0;
            best_c  = c;
        }
        return r2;
    };

    // One golden-section cell per start, split at midpoints between starts.
    for (std::size_t i = 0; i < starts.size(); ++i)
    {
        double lo = i == 0 ? -opts.t0_cap : 0.5 * (starts[i - 1] + starts[i]);
        double hi = i + 1 == starts.size() ? opts.t0_cap : 0.5 * (starts[i] + starts[i + 1]);
        lo        = std::clamp(lo, -opts.t0_cap, opts.t0_cap);
        hi        = std::clamp(hi, -opts.t0_cap, opts.t0_cap);
        consider(std::clamp(starts[i], -opts.t0_cap, opts.t0_cap));
        consider(lo);
        consider(hi);
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = consider(x1);
        double f2 = consider(x2);
        int it    = 0;
        while (hi - lo > opts.tolerance)
        {
            if (++it > opts.max_iterations)
                throw ConvergenceError("golden-section search did not converge", best_t0,
                                       std::sqrt(std::max(best_r2, 0.0)));
            if (f1 <= f2)
            {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = consider(x1);
            }
            else
            {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = consider(x2);
            }
        }
    }

    DistanceResult result;
    result.distance     = std::sqrt(std::max(best_r2, 0.0));
    result.boundary_hit = std::abs(best_t0) >= opts.t0_cap - 10.0 * opts.tolerance;
    if (best_c != 0.0 && std::isfinite(best_c))
        result.nearest = ManifoldPoint{best_c, best_t0};
    // Fall back to the point 0 in the closure of the manifold.
    const double ns = norm_star(u);
    if (result.distance > ns)
    {
        result.distance = ns;
        result.nearest.reset();
    }
    return result;
}

DeficitReport deficit_report(const ZonalFunction& u, const QuadratureRule& rule,
                             const DistanceOptions& opts)
{
    DeficitReport report;
    const double ns     = norm_star(u);
    report.norm_star_sq = ns * ns;
    report.lq_norm      = norm_Lp(u, u.params().q(), rule);
    report.deficit = report.norm_star_sq - sharp_constant(u.params()) * report.lq_norm * report.lq_norm;
    const DistanceResult d = distance(u, rule, opts);
    report.distance     = d.distance;
    report.nearest      = d.nearest;
    report.boundary_hit = d.boundary_hit;
    if (d.distance > 1e-9 * ns)
        report.ratio = report.deficit / (d.distance * d.distance);
    return report;
}

DeficitReport stability_ratio(const ZonalFunction& u, const QuadratureRule& rule,
                              const DistanceOptions& opts)
{
    DeficitReport report = deficit_report(u, rule, opts);
    if (!report.ratio)
        throw OnManifoldError("input lies on the extremizer manifold (axial distance " +
                              std::to_string(report.distance) + ")");
    return report;
}

std::size_t ScanConfig::member_count() const
{
    return static_cast<std::size_t>(std::max(normal_directions, 0)) * eps_grid.size() +
           static_cast<std::size_t>(std::max(random_members, 0)) +
           static_cast<std::size_t>(std::max(bubble_members, 0));
}

std::vector<ScanMember> scan_members(const SobolevParams& p, const ScanConfig& cfg,
                                     const QuadratureRule& rule)
{
    if (cfg.K < 2)
        throw DomainError("scan needs K >= 2");
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<ScanMember> members;
    members.reserve(cfg.member_count());
    const double area = sphere_area(p.N());
    const ZonalFunction one = ZonalFunction::constant(p, cfg.K, 1.0);

    const int top = std::min(cfg.normal_max_degree, cfg.K);
    for (int d = 0; d < cfg.normal_directions; ++d)
    {
        // Direction 0 is e_2, the worst local direction.
        ZonalFunction v = ZonalFunction::zero(p, cfg.K);
        Eigen::VectorXd c = Eigen::VectorXd::Zero(cfg.K + 1);
        if (d == 0)
            c[2] = 1.0;
        else
            for (int k = 2; k <= top; ++k)
                c[k] = gauss(rng) * std::pow(cfg.normal_decay, k - 2);
        if (c.norm() == 0.0)
            c[2] = 1.0;
        c *= std::sqrt(area) / c.norm();
        v = ZonalFunction(p, c);
        for (double eps : cfg.eps_grid)
        {
            std::ostringstream label;
            label << "dir=" << d << " eps=" << eps;
            members.push_back({"normal", label.str(), one + eps * v});
        }
    }
    for (int i = 0; i < cfg.random_members; ++i)
    {
        Eigen::VectorXd c(cfg.K + 1);
        for (int k = 0; k <= cfg.K; ++k)
            c[k] = gauss(rng) * std::pow(cfg.random_decay, k);
        members.push_back({"random", "member=" + std::to_string(i), ZonalFunction(p, c)});
    }
    for (int i = 0; i < cfg.bubble_members; ++i)
    {
        const double t0 = cfg.bubble_members == 1
                              ? cfg.bubble_min
                              : cfg.bubble_min + (cfg.bubble_max - cfg.bubble_min) * i /
                                                     (cfg.bubble_members - 1);
        std::ostringstream label;
        label << "t0=" << t0;
        members.push_back({"two-bubble", label.str(),
                           manifold_zonal(p, {1.0, t0}, rule, cfg.K) +
                               manifold_zonal(p, {1.0, -t0}, rule, cfg.K)});
    }
    return members;
}

unsigned resolve_threads(unsigned requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("SOBOLEV_THREADS"))
    {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0)
            return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ScanResult run_scan(const SobolevParams&, const ScanConfig& cfg,
                    const std::vector<ScanMember>& members, const QuadratureRule& rule)
{
    if (members.empty())
        throw DomainError("scan has no members");

    std::vector<ScanRecord> records(members.size());
    std::vector<std::exception_ptr> failures(members.size());
    auto work = [&](std::size_t i) {
        records[i].index  = i;
        records[i].family = members[i].family;
        records[i].label  = members[i].label;
        try
        {
            records[i].report = stability_ratio(members[i].u, rule, cfg.distance);
        }
        catch (const OnManifoldError&)
        {
            records[i].report.reset();
        }
        catch (...)
        {
            failures[i] = std::current_exception();
        }
    };

    const unsigned threads =
        std::min<unsigned>(resolve_threads(cfg.threads), static_cast<unsigned>(members.size()));
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < members.size(); ++i)
            work(i);
    }
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < members.size(); i += threads)
                    work(i);
            });
    }
    for (const auto& f : failures)
        if (f)
            std::rethrow_exception(f);

    ScanResult result;
    result.alpha_hat = std::numeric_limits<double>::infinity();
    for (const auto& rec : records)
    {
        if (!rec.report)
        {
            ++result.skipped;
            continue;
        }
        const DeficitReport& r = *rec.report;
        const double slack     = 1e-9 * r.norm_star_sq;
        if (r.deficit < -slack || r.distance * r.distance < r.deficit - slack)
            ++result.violations;
        result.alpha_hat = std::min(result.alpha_hat, *r.ratio);
    }
    result.records = std::move(records);
    if (result.skipped == result.records.size())
        throw OnManifoldError("every scan member lies on the extremizer manifold");
    return result;
}

ScanResult run_scan(const SobolevParams& p, const ScanConfig& cfg)
{
    const QuadratureRule rule = gauss_jacobi_rule(p.N(), cfg.quadrature_size());
    return run_scan(p, cfg, scan_members(p, cfg, rule), rule);
}

double estimate_alpha(const SobolevParams& p, const ScanConfig& cfg)
{
    return run_scan(p, cfg).alpha_hat;
}

} // namespace sobolev

#include "sobolev/zonal.hpp"

#include "sobolev/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace sobolev
{
namespace
{

// Off-diagonal entry sqrt(beta_n) of the Jacobi matrix for the weight
// (1 - t^2)^a, a = (N - 2) / 2. beta_1 is the removable-singularity limit
// of the general formula (needed for a = -1/2).
double recurrence_offdiag(int N, int n)
{
    const double a = 0.5 * (N - 2);
    if (n == 1)
        return std::sqrt(1.0 / (2.0 * a + 3.0));
    const double nn = n;
    return std::sqrt(nn * (nn + 2.0 * a) / ((2.0 * nn + 2.0 * a + 1.0) * (2.0 * nn + 2.0 * a - 1.0)));
}

void check_latitude(double t)
{
    if (!(std::abs(t) <= 1.0))
        throw DomainError("latitude t must lie in [-1, 1], got " + std::to_string(t));
}

// Value and derivative of e_M (unnormalized scaling is irrelevant for Newton).
std::pair<double, double> top_polynomial(int N, int M, double t)
{
    double prev = 0.0, prev_d = 0.0;
    double cur = 1.0, cur_d = 0.0;
    double b_prev = 0.0;
    for (int k = 0; k < M; ++k)
    {
        const double b_next = recurrence_offdiag(N, k + 1);
        const double next   = (t * cur - b_prev * prev) / b_next;
        const double next_d = (cur + t * cur_d - b_prev * prev_d) / b_next;
        prev   = cur;
        prev_d = cur_d;
        cur    = next;
        cur_d  = next_d;
        b_prev = b_next;
    }
    return {cur, cur_d};
}

// Christoffel function 1 / sum_{k<M} e_k(t)^2.
double christoffel_weight(int N, int M, double t)
{
    const double mu0 = sphere_area(N);
    double prev = 0.0, cur = 1.0 / std::sqrt(mu0);
    double b_prev = 0.0;
    double sum    = cur * cur;
    for (int k = 0; k + 1 < M; ++k)
    {
        const double b_next = recurrence_offdiag(N, k + 1);
        const double next   = (t * cur - b_prev * prev) / b_next;
        prev   = cur;
        cur    = next;
        b_prev = b_next;
        sum += cur * cur;
    }
    return 1.0 / sum;
}

void require_same_params(const ZonalFunction& u, const ZonalFunction& v)
{
    if (!(u.params() == v.params()))
        throw DomainError("zonal functions carry different (N, s) parameters");
}

} // namespace

QuadratureRule gauss_jacobi_rule(int N, int M)
{
    if (N < 1)
        throw DomainError("gauss_jacobi_rule requires N >= 1");
    if (M < 2)
        throw DomainError("gauss_jacobi_rule requires M >= 2, got " + std::to_string(M));

    Eigen::VectorXd diag    = Eigen::VectorXd::Zero(M);
    Eigen::VectorXd subdiag(M - 1);
    for (int n = 1; n < M; ++n)
        subdiag[n - 1] = recurrence_offdiag(N, n);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
    Eigen::VectorXd nodes = solver.eigenvalues();

    for (int i = 0; i < M; ++i)
    {
        double t = nodes[i];
        for (int it = 0; it < 8; ++it)
        {
            const auto [p, dp] = top_polynomial(N, M, t);
            const double step  = p / dp;
            t -= step;
            if (std::abs(step) <= 1e-17)
                break;
        }
        nodes[i] = t;
    }

    QuadratureRule rule;
    rule.N       = N;
    rule.nodes   = Eigen::VectorXd(M);
    rule.weights = Eigen::VectorXd(M);
    for (int i = 0; i < M / 2; ++i)
    {
        const double t = 0.5 * (nodes[M - 1 - i] - nodes[i]);
        const double w = christoffel_weight(N, M, t);
        rule.nodes[i]         = -t;
        rule.nodes[M - 1 - i] = t;
        rule.weights[i]         = w;
        rule.weights[M - 1 - i] = w;
    }
    if (M % 2 == 1)
    {
        rule.nodes[M / 2]   = 0.0;
        rule.weights[M / 2] = christoffel_weight(N, M, 0.0);
    }
    return rule;
}

double basis_eval(int N, int k, double t)
{
    if (N < 1)
        throw DomainError("basis_eval requires N >= 1");
    if (k < 0)
        throw DomainError("basis_eval requires k >= 0");
    check_latitude(t);
    double prev = 0.0, cur = 1.0 / std::sqrt(sphere_area(N));
    double b_prev = 0.0;
    for (int j = 0; j < k; ++j)
    {
        const double b_next = recurrence_offdiag(N, j + 1);
        const double next   = (t * cur - b_prev * prev) / b_next;
        prev   = cur;
        cur    = next;
        b_prev = b_next;
    }
    return cur;
}

Eigen::MatrixXd basis_matrix(int N, int K, const Eigen::Ref<const Eigen::VectorXd>& t)
{
    if (K < 0)
        throw DomainError("basis_matrix requires K >= 0");
    Eigen::MatrixXd B(t.size(), K + 1);
    B.col(0).setConstant(1.0 / std::sqrt(sphere_area(N)));
    if (K == 0)
        return B;
    const double b1 = recurrence_offdiag(N, 1);
    B.col(1) = t.cwiseProduct(B.col(0)) / b1;
    double b_prev = b1;
    for (int k = 1; k < K; ++k)
    {
        const double b_next = recurrence_offdiag(N, k + 1);
        B.col(k + 1) = (t.cwiseProduct(B.col(k)) - b_prev * B.col(k - 1)) / b_next;
        b_prev = b_next;
    }
    return B;
}

ZonalFunction::ZonalFunction(SobolevParams params, Eigen::VectorXd coeffs)
    : params_(params), coeffs_(std::move(coeffs))
{
    if (coeffs_.size() == 0)
        throw DomainError("zonal function needs at least one coefficient");
}

ZonalFunction ZonalFunction::zero(const SobolevParams& params, int K)
{
    if (K < 0)
        throw DomainError("truncation degree K must be >= 0");
    return {params, Eigen::VectorXd::Zero(K + 1)};
}

ZonalFunction ZonalFunction::unit(const SobolevParams& params, int K, int k)
{
    if (k < 0 || k > K)
        throw DomainError("unit harmonic degree must satisfy 0 <= k <= K");
    ZonalFunction u = zero(params, K);
    u.coeffs_[k]    = 1.0;
    return u;
}

ZonalFunction ZonalFunction::constant(const SobolevParams& params, int K, double c)
{
    ZonalFunction u = zero(params, K);
    u.coeffs_[0]    = c * std::sqrt(sphere_area(params.N()));
    return u;
}

ZonalFunction& ZonalFunction::operator+=(const ZonalFunction& other)
{
    require_same_params(*this, other);
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.conservativeResizeLike(Eigen::VectorXd::Zero(other.coeffs_.size()));
    coeffs_.head(other.coeffs_.size()) += other.coeffs_;
    return *this;
}

ZonalFunction& ZonalFunction::operator-=(const ZonalFunction& other)
{
    require_same_params(*this, other);
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.conservativeResizeLike(Eigen::VectorXd::Zero(other.coeffs_.size()));
    coeffs_.head(other.coeffs_.size()) -= other.coeffs_;
    return *this;
}

ZonalFunction& ZonalFunction::operator*=(double c)
{
    coeffs_ *= c;
    return *this;
}

ZonalFunction operator+(ZonalFunction a, const ZonalFunction& b) { return a += b; }
ZonalFunction operator-(ZonalFunction a, const ZonalFunction& b) { return a -= b; }
ZonalFunction operator*(double c, ZonalFunction a) { return a *= c; }
ZonalFunction operator-(ZonalFunction a) { return a *= -1.0; }

ZonalFunction analyze(const Eigen::Ref<const Eigen::VectorXd>& samples, const QuadratureRule& rule,
                      const SobolevParams& params, int K)
{
    if (rule.N != params.N())
        throw DomainError("quadrature rule dimension does not match N");
    if (samples.size() != rule.size())
        throw DomainError("sample count does not match quadrature size");
    if (rule.size() <= K)
        throw DomainError("analyze needs M >= K + 1 nodes (M = " + std::to_string(rule.size()) +
                          ", K = " + std::to_string(K) + ")");
    const Eigen::MatrixXd B = basis_matrix(rule.N, K, rule.nodes);
    Eigen::VectorXd coeffs  = B.transpose() * rule.weights.cwiseProduct(samples);
    return {params, std::move(coeffs)};
}

double synthesize(const ZonalFunction& u, double t)
{
    check_latitude(t);
    const int N = u.params().N();
    double prev = 0.0, cur = 1.0 / std::sqrt(sphere_area(N));
    double b_prev = 0.0;
    double sum    = u[0] * cur;
    for (int k = 0; k < u.K(); ++k)
    {
        const double b_next = recurrence_offdiag(N, k + 1);
        const double next   = (t * cur - b_prev * prev) / b_next;
        prev   = cur;
        cur    = next;
        b_prev = b_next;
        sum += u[k + 1] * cur;
    }
    return sum;
}

Eigen::VectorXd node_values(const ZonalFunction& u, const QuadratureRule& rule)
{
    if (rule.N != u.params().N())
        throw DomainError("quadrature rule dimension does not match N");
    return basis_matrix(rule.N, u.K(), rule.nodes) * u.coeffs();
}

Eigen::VectorXd eigenvalues(const SobolevParams& p, int K)
{
    Eigen::VectorXd lambda(K + 1);
    for (int k = 0; k <= K; ++k)
        lambda[k] = eigenvalue(p, k);
    return lambda;
}

double inner_star(const ZonalFunction& u, const ZonalFunction& v)
{
    require_same_params(u, v);
    const int K = std::min(u.K(), v.K());
    const Eigen::VectorXd lambda = eigenvalues(u.params(), K);
    return (lambda.array() * u.coeffs().head(K + 1).array() * v.coeffs().head(K + 1).array()).sum();
}

double norm_star(const ZonalFunction& u)
{
    const Eigen::VectorXd lambda = eigenvalues(u.params(), u.K());
    return std::sqrt((lambda.array() * u.coeffs().array().square()).sum());
}

double norm_Lp_nodes(const Eigen::Ref<const Eigen::VectorXd>& values, double p,
                     const QuadratureRule& rule)
{
    if (!(p >= 1.0))
        throw DomainError("norm_Lp requires p >= 1");
    const double integral = rule.weights.dot(values.cwiseAbs().array().pow(p).matrix());
    return std::pow(integral, 1.0 / p);
}

double norm_Lp(const ZonalFunction& u, double p, const QuadratureRule& rule)
{
    if (!(p >= 1.0))
        throw DomainError("norm_Lp requires p >= 1");
    return norm_Lp_nodes(node_values(u, rule), p, rule);
}

} // namespace sobolev

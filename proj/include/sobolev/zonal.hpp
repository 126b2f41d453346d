#pragma once

#include "sobolev/specfun.hpp"

#include <Eigen/Dense>

namespace sobolev
{

/// Gauss rule on (-1, 1) for the latitudinal measure of S^N,
/// |S^{N-1}| (1 - t^2)^{(N-2)/2} dt. Nodes ascending and mirror-symmetric.
struct QuadratureRule
{
    int N = 0;
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;

    Eigen::Index size() const noexcept { return nodes.size(); }

    /// Sum of w_i f(t_i).
    template <typename F>
    double integrate(F&& f) const
    {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < size(); ++i)
            sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

/// M-point rule built from the Jacobi matrix of the symmetric weight
/// (Golub-Welsch), with Newton-polished nodes and Christoffel weights.
QuadratureRule gauss_jacobi_rule(int N, int M);

/// Orthonormal zonal harmonic e_k(t) on S^N: unit L2(S^N) norm, positive
/// leading coefficient.
double basis_eval(int N, int k, double t);

/// Matrix B(i, k) = e_k(t_i) for k = 0..K.
Eigen::MatrixXd basis_matrix(int N, int K, const Eigen::Ref<const Eigen::VectorXd>& t);

/// Axially symmetric function on S^N stored by its coefficients in the
/// orthonormal zonal basis e_0..e_K.
class ZonalFunction
{
  public:
    ZonalFunction(SobolevParams params, Eigen::VectorXd coeffs);

    /// Zero function of truncation degree K.
    static ZonalFunction zero(const SobolevParams& params, int K);
    /// The normalized harmonic e_k embedded in degree K >= k.
    static ZonalFunction unit(const SobolevParams& params, int K, int k);
    /// The constant function c.
    static ZonalFunction constant(const SobolevParams& params, int K, double c);

    const SobolevParams& params() const noexcept { return params_; }
    const Eigen::VectorXd& coeffs() const noexcept { return coeffs_; }
    int K() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    double operator[](int k) const { return coeffs_[k]; }

    /// L2(S^N) norm via Parseval.
    double l2_norm() const { return coeffs_.norm(); }

    ZonalFunction& operator+=(const ZonalFunction& other);
    ZonalFunction& operator-=(const ZonalFunction& other);
    ZonalFunction& operator*=(double c);

  private:
    SobolevParams params_;
    Eigen::VectorXd coeffs_;
};

ZonalFunction operator+(ZonalFunction a, const ZonalFunction& b);
ZonalFunction operator-(ZonalFunction a, const ZonalFunction& b);
ZonalFunction operator*(double c, ZonalFunction a);
ZonalFunction operator-(ZonalFunction a);

/// Coefficients a_k = sum_i w_i f(t_i) e_k(t_i). Requires M >= K + 1.
ZonalFunction analyze(const Eigen::Ref<const Eigen::VectorXd>& samples, const QuadratureRule& rule,
                      const SobolevParams& params, int K);

/// Point evaluation sum_k a_k e_k(t).
double synthesize(const ZonalFunction& u, double t);

/// Values of u at every node of the rule.
Eigen::VectorXd node_values(const ZonalFunction& u, const QuadratureRule& rule);

/// Spectral eigenvalues lambda_0..lambda_K.
Eigen::VectorXd eigenvalues(const SobolevParams& p, int K);

/// ||u||_*, the norm of the quadratic form of A_s.
double norm_star(const ZonalFunction& u);

/// <u, v>_* = sum_k lambda_k a_k b_k. Shorter coefficient vectors are padded with zeros.
double inner_star(const ZonalFunction& u, const ZonalFunction& v);

/// (sum_i w_i |u(t_i)|^p)^{1/p}.
double norm_Lp(const ZonalFunction& u, double p, const QuadratureRule& rule);

/// Same as norm_Lp with values already sampled at the rule's nodes.
double norm_Lp_nodes(const Eigen::Ref<const Eigen::VectorXd>& values, double p,
                     const QuadratureRule& rule);

} // namespace sobolev

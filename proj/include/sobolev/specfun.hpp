#pragma once

#include <cstdint>

namespace sobolev
{

/// Dimension N and order s of the inequality. The Lebesgue exponent
/// q = 2N/(N-s) is always recomputed from (N, s).
class SobolevParams
{
  public:
    /// Throws DomainError unless N >= 1 and 0 < s < N.
    SobolevParams(int N, double s);

    int N() const noexcept { return N_; }
    double s() const noexcept { return s_; }
    double q() const noexcept { return 2.0 * N_ / (N_ - s_); }

    /// (N - s) / 2, the decay exponent of the extremizer profile.
    double half_gap() const noexcept { return 0.5 * (N_ - s_); }

    friend bool operator==(const SobolevParams&, const SobolevParams&) = default;

  private:
    int N_;
    double s_;
};

/// ln Gamma(x) for x > 0 (Lanczos approximation, g = 671/128).
double log_gamma(double x);

/// Gamma(a) / Gamma(b) evaluated in log space.
double gamma_ratio(double a, double b);

/// |S^n| = 2 pi^{(n+1)/2} / Gamma((n+1)/2), n >= 1.
double sphere_area(int n);

/// |S^{N-1}|, the area of the unit sphere in R^N. For N = 1 this is the
/// counting measure of S^0 = {-1, 1}, i.e. 2.
double boundary_sphere_area(int N);

/// Volume of the unit ball in R^N.
double unit_ball_volume(int N);

/// Sharp constant S(N, s) of the fractional Sobolev inequality.
double sharp_constant(const SobolevParams& p);

/// Eigenvalue lambda_k(s) = Gamma((N+s)/2 + k) / Gamma((N-s)/2 + k) of the
/// conformal operator A_s on S^N, acting on degree-k spherical harmonics.
double eigenvalue(const SobolevParams& p, int k);

/// Dimension of the degree-k spherical harmonics on S^N:
/// binom(k+N, N) - binom(k+N-2, N). Throws on overflow.
std::int64_t multiplicity(int N, int k);

/// Exact binomial coefficient; zero when m < n. Throws DomainError on overflow.
std::int64_t binomial(std::int64_t m, std::int64_t n);

/// Best local stability constant 2s / (N + s + 2) = 1 - lambda_1 / lambda_2.
double local_constant(const SobolevParams& p);

/// (q-1) S |S^N|^{(2-q)/q} - lambda_1(s). Vanishes identically.
double lambda1_identity_residual(const SobolevParams& p);

} // namespace sobolev

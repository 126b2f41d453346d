#include "oracles.hpp"

#include <sobolev/deficit.hpp>
#include <sobolev/errors.hpp>
#include <sobolev/weaknorm.hpp>

#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

using namespace sobolev;

TEST_CASE("bathtub weak norm of step functions")
{
    const SobolevParams p(3, 2.0); // s/N = 2/3
    Eigen::VectorXd v(3), m(3);
    v << 1.0, 4.0, 2.0;
    m << 1.0, 0.5, 2.0;
    // prefixes by value: {4}, {4, 2}, {4, 2, 1}
    const double e = std::max({2.0 * std::pow(0.5, -2.0 / 3.0), 6.0 * std::pow(2.5, -2.0 / 3.0),
                               7.0 * std::pow(3.5, -2.0 / 3.0)});
    CHECK(weak_norm(v, m, p) == doctest::Approx(e).epsilon(1e-14));
    CHECK(weak_norm(Eigen::VectorXd(), Eigen::VectorXd(), p) == 0.0);
    CHECK_THROWS_AS(weak_norm(-v, m, p), DomainError);
    CHECK_THROWS_AS(weak_norm(v, Eigen::VectorXd::Zero(3), p), DomainError);
}

TEST_CASE("weak norm of indicators and rescaled measures")
{
    const SobolevParams p(3, 2.0);
    CHECK(weak_norm(Eigen::VectorXd::Ones(4), Eigen::VectorXd::Constant(4, 0.25), p) == doctest::Approx(1.0));
    Eigen::VectorXd v(4), m(4);
    v << 0.3, 2.0, 1.1, 0.7;
    m << 0.2, 0.5, 1.5, 0.1;
    CHECK(weak_norm(v, 2.0 * m, p) == doctest::Approx(std::pow(2.0, 1.0 / 3.0) * weak_norm(v, m, p)).epsilon(1e-14));
}

TEST_CASE("bathtub agrees with brute force over all subsets")
{
    const SobolevParams p(2, 0.5);
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> unif(0.1, 2.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        const int n = 8;
        Eigen::VectorXd v(n), m(n);
        for (int i = 0; i < n; ++i)
        {
            v[i] = unif(gen);
            m[i] = unif(gen);
        }
        double best = 0.0;
        for (int mask = 1; mask < (1 << n); ++mask)
        {
            double mass = 0.0, vol = 0.0;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i))
                {
                    mass += v[i] * m[i];
                    vol += m[i];
                }
            best = std::max(best, mass * std::pow(vol, -0.25));
        }
        CHECK(weak_norm(v, m, p) == doctest::Approx(best).epsilon(1e-13));
    }
}

TEST_CASE("shell weak norm matches the threshold oracle")
{
    const SobolevParams p(3, 2.0);
    const auto u     = bump_profile(p, 1.0, 1.0);
    const auto cells = radial_cells(u, 1.0, 20000);
    CHECK(cells.measures.sum() == doctest::Approx(unit_ball_volume(3)).epsilon(1e-12));
    CHECK(oracle::rel(weak_norm(cells.values, cells.measures, p), ball_threshold_sup(u, 1.0)) < 1e-9);
}

TEST_CASE("weak norm of the extremizer approaches the closed form")
{
    // s = 2: the ball ratio tends to |U|_w from below like a power of 1/R.
    const SobolevParams p(3, 2.0);
    const auto U     = extremizer_profile(p);
    const double lim = U_weak_norm(p);
    double previous  = 0.0;
    for (double R : {10.0, 100.0, 1000.0})
    {
        const double f = ball_threshold_sup(U, R);
        CHECK(f < lim);
        CHECK(f > previous);
        previous = f;
    }
    CHECK(oracle::rel(previous, lim) < 1e-2);
    // N = 3, s = 2: int_{B_R} U = 2 pi (R sqrt(1 + R^2) - asinh R), |B_R| = 4 pi R^3 / 3
    auto exact = [](double R) {
        return 2.0 * std::numbers::pi * (R * std::sqrt(1.0 + R * R) - std::asinh(R)) *
               std::pow(4.0 * std::numbers::pi * R * R * R / 3.0, -2.0 / 3.0);
    };
    CHECK(oracle::rel(ball_threshold_sup(U, 10.0), exact(10.0)) < 1e-9);
    CHECK(oracle::rel(exact(1e7), lim) < 1e-12);
    // U_lambda(x) = lambda U(lambda^2 x) here, so |U_lambda|_w = |U|_w / lambda
    const auto Ul = extremizer_profile(p, 3.0);
    CHECK(oracle::rel(3.0 * ball_threshold_sup(Ul, 1000.0 / 9.0), ball_threshold_sup(U, 1000.0)) < 1e-9);
}

TEST_CASE("tail integral closed forms")
{
    const double pi = std::numbers::pi;
    CHECK(oracle::rel(tail_lq({3, 2.0}, 1.0, 1.0), 4.0 * pi * pi / 32.0) < 1e-12);
    for (int N = 1; N <= 8; ++N)
    {
        const SobolevParams p(N, 0.5);
        const double area = N == 1 ? 2.0 : oracle::sphere_area(N - 1);
        CHECK(oracle::rel(tail_lq(p, 1.0, 1.0), area * oracle::beta(0.5 * N, 0.5 * N) / 4.0) < 1e-12);
        // total mass over r0 -> 0
        CHECK(oracle::rel(tail_lq(p, 1.0, 1e-9), area * oracle::beta(0.5 * N, 0.5 * N) / 2.0) < 1e-8);
        // larger lambda moves the lower limit outwards
        CHECK(tail_lq(p, 2.0, 1.0) < tail_lq(p, 1.0, 1.0));
    }
    // lambda^{2/(N-s)} r0 is what matters
    const SobolevParams p(3, 1.0);
    CHECK(oracle::rel(tail_lq(p, 2.0, 1.0), tail_lq(p, 1.0, 2.0)) < 1e-13);
}

TEST_CASE("explicit constants are consistent")
{
    for (int N = 1; N <= 8; ++N)
        for (double s : {0.3, 1.0, 2.5})
        {
            if (s >= N)
                continue;
            const SobolevParams p(N, s);
            const WeakNormConstants c = compute_constants(p);
            const double rootS        = std::sqrt(sharp_constant(p));
            CHECK(c.rho > 0.0);
            CHECK(c.rho < 1.0);
            CHECK(oracle::rel(c.rho / (rootS * (1.0 - c.rho)), c.tail_root) < 1e-12);
            CHECK(oracle::rel(unit_ball_volume(N) * std::pow(c.r0, N), 1.0) < 1e-13);
            CHECK(c.C0 >= c.C2);
            CHECK(c.C0 >= 1.0 / (c.rho * rootS));
            CHECK(oracle::rel(c.C * c.C0 * c.C0, 1.0) < 1e-14);
        }
}

TEST_CASE("remainder inequality on compact profiles")
{
    const SobolevParams p(3, 2.0);
    const auto constants      = compute_constants(p);
    const QuadratureRule rule = gauss_jacobi_rule(3, 1026);
    const auto r = verify_theorem2(bump_profile(p, constants.r0, 1.0), rule, 512, constants);
    CHECK(r.passed);
    CHECK(r.margin > 0.0);
    CHECK(r.omega_measure == doctest::Approx(1.0));
    CHECK(r.coefficient_tail < 1e-6);

    // dilating u by lambda leaves the deficit unchanged and both |Omega|^{-2/q} |u|_w^2 invariant
    const auto u  = bump_profile(p, 1.0, 2.0);
    const auto ud = dilate(u, 1.7);
    const auto a  = verify_theorem2(u, rule, 512, constants);
    const auto b  = verify_theorem2(ud, rule, 512, constants);
    CHECK(oracle::rel(b.lhs, a.lhs) < 1e-6);
    CHECK(oracle::rel(b.rhs, a.rhs) < 1e-6);

    CHECK_THROWS_AS(verify_theorem2(bump_profile(p, constants.r0, 0.5), gauss_jacobi_rule(3, 66), 32, constants),
                    TruncationError);
    CHECK_THROWS_AS(verify_theorem2(gaussian_profile(p), rule, 512, constants), DomainError);
}

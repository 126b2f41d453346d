#include "oracles.hpp"

#include <sobolev/conformal.hpp>
#include <sobolev/deficit.hpp>
#include <sobolev/errors.hpp>

#include <doctest.h>

#include <random>

using namespace sobolev;

namespace
{

ZonalFunction smooth_random(const SobolevParams& p, int K, std::uint64_t seed, double decay = 0.5)
{
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(K + 1);
    for (int k = 0; k <= 12 && k <= K; ++k)
        c[k] = normal(gen) * std::pow(decay, k);
    c[0] += 3.0;
    return {p, c};
}

/// ||u||_{L^q(R^N)}^q for radial u via r = tan(phi).
double radial_lq_oracle(const RadialFunction& u, double q)
{
    const int N = u.params().N();
    const double upper = u.compact() ? std::atan(u.support_radius()) : 0.5 * std::numbers::pi;
    auto f = [&](double phi) {
        const double r = std::tan(phi), c = std::cos(phi);
        return std::pow(std::abs(u(r)), q) * std::pow(r, N - 1) / (c * c);
    };
    const double area = N == 1 ? 2.0 : oracle::sphere_area(N - 1);
    return area * oracle::simpson(f, 0.0, upper * (1.0 - 1e-12), 1e-13);
}

} // namespace

TEST_CASE("stereographic coordinates")
{
    for (double r : {0.0, 0.3, 1.0, 2.5, 40.0})
        CHECK(stereo_radius(stereo_latitude(r)) == doctest::Approx(r).epsilon(1e-12));
    CHECK(std::isinf(stereo_radius(-1.0)));
    CHECK(stereo_radius(1.0) == 0.0);
    CHECK(stereo_latitude(1.0) == doctest::Approx(0.0));
    CHECK(stereo_jacobian(3, 1.0) == doctest::Approx(1.0));
    CHECK(stereo_jacobian(2, 0.0) == doctest::Approx(4.0));
    CHECK_THROWS_AS(stereo_radius(1.5), DomainError);
}

TEST_CASE("profile grammar")
{
    const SobolevParams p(3, 2.0);
    CHECK(parse_profile(p, "gaussian").name() == "gaussian:1");
    CHECK(parse_profile(p, "profile=gaussian:0.5")(0.5) == doctest::Approx(std::exp(-1.0)));
    const auto bump = parse_profile(p, "bump:2");
    CHECK(bump.compact());
    CHECK(bump.support_radius() == 2.0);
    CHECK(bump(0.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(bump(2.0) == 0.0);
    CHECK(parse_profile(p, "bump:2,3")(0.0) == doctest::Approx(std::exp(-3.0)));
    CHECK(parse_profile(p, "extremizer")(1.0) == doctest::Approx(std::pow(2.0, -0.5)));
    const auto cut = parse_profile(p, "cutoff-extremizer:1,2");
    CHECK(cut(0.9) == doctest::Approx(std::pow(1.81, -0.5)));
    CHECK(cut(2.0) == 0.0);
    CHECK_THROWS_AS(parse_profile(p, "square:1"), DomainError);
    CHECK_THROWS_AS(parse_profile(p, "bump"), DomainError);
    CHECK_THROWS_AS(parse_profile(p, "bump:x"), DomainError);
    CHECK_THROWS_AS(parse_profile(p, "gaussian:-1"), DomainError);
}

TEST_CASE("the standard extremizer pulls back to a constant")
{
    for (auto [N, s] : {std::pair{3, 2.0}, std::pair{2, 0.5}, std::pair{5, 3.3}})
    {
        const SobolevParams p(N, s);
        const QuadratureRule rule = gauss_jacobi_rule(N, 34);
        const ZonalFunction v     = pullback_to_sphere(extremizer_profile(p), rule, 16);
        const double c0           = std::pow(2.0, -p.half_gap()) * std::sqrt(oracle::sphere_area(N));
        CHECK(v[0] == doctest::Approx(c0).epsilon(1e-12));
        CHECK(v.coeffs().tail(16).norm() < 1e-12);
    }
}

TEST_CASE("pullback preserves the L^q norm")
{
    for (auto [N, s] : {std::pair{3, 2.0}, std::pair{2, 1.0}, std::pair{1, 0.5}, std::pair{4, 1.5}})
    {
        const SobolevParams p(N, s);
        const QuadratureRule rule = gauss_jacobi_rule(N, 402);
        for (const auto& u : {gaussian_profile(p, 1.0), bump_profile(p, 1.5), extremizer_profile(p, 2.0)})
        {
            const double want = radial_lq_oracle(u, p.q());
            CAPTURE(u.name());
            CHECK(oracle::rel(radial_lq_power(u, p.q(), rule), want) < 1e-8);
            const ZonalFunction v = pullback_to_sphere(u, rule, 200);
            CHECK(oracle::rel(std::pow(norm_Lp(v, p.q(), rule), p.q()), want) < 1e-6);
        }
    }
}

TEST_CASE("dilation of an extremizer stays on the manifold")
{
    const SobolevParams p(3, 2.0);
    const QuadratureRule rule = gauss_jacobi_rule(3, 130);
    for (double lambda : {0.5, 2.0})
    {
        const ZonalFunction v = pullback_to_sphere(extremizer_profile(p, lambda), rule, 64);
        CHECK(deficit(v, rule) < 1e-10 * norm_star(v) * norm_star(v));
        const DistanceResult d = distance(v, rule);
        CHECK(d.distance < 1e-6 * norm_star(v));
    }
}

TEST_CASE("conformal shift maps the constant to an axial extremizer")
{
    const SobolevParams p(3, 1.5);
    const QuadratureRule rule = gauss_jacobi_rule(3, 130);
    for (double t0 : {-0.6, 0.2, 0.7})
    {
        const auto one     = ZonalFunction::constant(p, 64, 1.0);
        const auto shifted = conformal_shift(one, t0, rule, 64);
        const auto want =
            manifold_zonal(p, ManifoldPoint::make(std::pow(1.0 - t0 * t0, p.half_gap() / 2.0), t0), rule, 64);
        CHECK((shifted - want).l2_norm() < 1e-9 * want.l2_norm());
    }
    CHECK_THROWS_AS(conformal_shift(ZonalFunction::constant(p, 4, 1.0), 1.0, rule, 4), DomainError);
    CHECK_THROWS_AS(ManifoldPoint::make(0.0, 0.1), DomainError);
}

TEST_CASE("conformal shift preserves both norms")
{
    for (auto [N, s] : {std::pair{3, 2.0}, std::pair{2, 0.5}})
    {
        const SobolevParams p(N, s);
        const int K               = 128;
        const QuadratureRule rule = gauss_jacobi_rule(N, 2 * K + 2);
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
        {
            const auto u = smooth_random(p, K, seed);
            const auto w = conformal_shift(u, 0.4, rule, K);
            CHECK(oracle::rel(norm_star(w), norm_star(u)) < 1e-7);
            CHECK(oracle::rel(norm_Lp(w, p.q(), rule), norm_Lp(u, p.q(), rule)) < 1e-7);
            // the inverse map undoes it
            const auto back = conformal_shift(w, -0.4, rule, K);
            CHECK((back - u).l2_norm() < 1e-7 * u.l2_norm());
        }
    }
}

TEST_CASE("dilation on R^N matches the conformal shift")
{
    const SobolevParams p(3, 2.0);
    const int K               = 160;
    const QuadratureRule rule = gauss_jacobi_rule(3, 2 * K + 2);
    const auto g              = gaussian_profile(p, 1.0);
    const auto v              = pullback_to_sphere(g, rule, K);
    const auto vd             = pullback_to_sphere(dilate(g, 1.5), rule, K);
    CHECK(oracle::rel(norm_star(vd), norm_star(v)) < 1e-7);
    CHECK(oracle::rel(norm_Lp(vd, p.q(), rule), norm_Lp(v, p.q(), rule)) < 1e-7);
}

#include <doctest.h>

#include "test_util.hpp"
#include "unidisc/diffgeo.hpp"
#include "unidisc/hille.hpp"
#include "unidisc/oracle.hpp"
#include "unidisc/parser.hpp"

using namespace unidisc;
using testutil::rel;

TEST_CASE("spherical derivative anchors")
{
    FunctionExpr z = FunctionExpr::variable();
    CHECK(spherical_derivative(z, 0.0) == 1.0);
    CHECK(rel(spherical_derivative(hille(1.0), 0.5), 4.0 / 3.0) <= 1e-12);
    CHECK(rel(spherical_derivative(parse_function("1/z"), 0.0), 1.0) <= 1e-15);
    // f = exp(z) on the real axis: 1/(2 cosh x)
    for (double x : {0.0, 0.3, -0.7}) {
        CHECK(rel(spherical_derivative(exp(z), x), 1.0 / (2.0 * std::cosh(x))) <= 1e-13);
    }
    CHECK(rel(spherical_derivative(exp(z), 0.3), 0.47831395595012414) <= 1e-13);
}

TEST_CASE("schwarzian anchors and invariances")
{
    SplitMix64 rng(21);
    // Mobius maps are annihilated
    for (int n = 0; n < 20; n++) {
        Complex a(rng.uniform(-2, 2), rng.uniform(-2, 2));
        Complex b(rng.uniform(-2, 2), rng.uniform(-2, 2));
        Complex c(rng.uniform(-2, 2), rng.uniform(-2, 2));
        Complex d(rng.uniform(-2, 2), rng.uniform(-2, 2));
        if (std::abs(a * d - b * c) < 0.1)
            continue;
        Complex z = rng.disc_point(0.9);
        FunctionExpr m = mobius(a, b, c, d);
        CHECK(std::abs(schwarzian(m, z)) <= 1e-9);
    }

    FunctionExpr z = FunctionExpr::variable();
    CHECK(rel(schwarzian(exp(z), Complex(0.2, 0.3)), Complex(-0.5)) <= 1e-12);
    CHECK(rel(schwarzian(hille(1.0), 0.0), Complex(4.0)) <= 1e-12);

    // invariance under Mobius post-composition
    FunctionExpr f = hille(0.9);
    for (int n = 0; n < 20; n++) {
        Complex a(rng.uniform(-2, 2), rng.uniform(-2, 2));
        Complex b(rng.uniform(-2, 2), rng.uniform(-2, 2));
        Complex c(rng.uniform(-2, 2), rng.uniform(-2, 2));
        Complex d(rng.uniform(-2, 2), rng.uniform(-2, 2));
        if (std::abs(a * d - b * c) < 0.1)
            continue;
        Complex zz = rng.disc_point(0.9);
        FunctionExpr composed = mobius(a, b, c, d).substitute(f);
        CHECK(rel(schwarzian(composed, zz), schwarzian(f, zz)) <= 1e-10);
    }

    // chain rule for Mobius pre-composition: S(f o M)(z) = S(f)(M z) M'(z)^2
    FunctionExpr m = mobius(1, -0.3, -0.3, 1);  // disc automorphism
    for (int n = 0; n < 20; n++) {
        Complex zz = rng.disc_point(0.9);
        Jet3 mj = m.eval_jet(zz);
        Complex lhs = schwarzian(f.substitute(m), zz);
        Complex rhs = schwarzian(f, mj.d0) * mj.d1 * mj.d1;
        CHECK(rel(lhs, rhs) <= 1e-10);
    }
}

TEST_CASE("schwarzian closed form for the extremal family")
{
    SplitMix64 rng(22);
    for (int n = 0; n < 50; n++) {
        double lambda = rng.uniform(0.2, 2.2);
        Complex z = rng.disc_point(0.9);
        CHECK(rel(schwarzian(hille(lambda), z), hille_schwarzian_closed(lambda, z)) <= 1e-10);
    }
    // the modulus variant disagrees off the real axis; the jet arbitrates
    Complex z(0.0, 0.5);
    double s = 1.0 - std::norm(z);
    CHECK(rel(schwarzian(hille(1.0), z), Complex(2.56)) <= 1e-12);
    CHECK(std::abs(schwarzian(hille(1.0), z) - Complex(4.0 / (s * s))) > 1.0);
}

TEST_CASE("mobius spherical derivative matches the projective closed form")
{
    // f# of (az+b)/(cz+d) is |ad - bc| / (|az+b|^2 + |cz+d|^2), also at poles
    SplitMix64 rng(23);
    for (int n = 0; n < 30; n++) {
        Complex a(rng.uniform(-2, 2), rng.uniform(-2, 2));
        Complex b(rng.uniform(-2, 2), rng.uniform(-2, 2));
        Complex c(rng.uniform(-2, 2), rng.uniform(-2, 2));
        Complex d(rng.uniform(-2, 2), rng.uniform(-2, 2));
        if (std::abs(a * d - b * c) < 0.1)
            continue;
        Complex z = rng.disc_point(0.95);
        double expected = std::abs(a * d - b * c) / (std::norm(a * z + b) + std::norm(c * z + d));
        CHECK(rel(spherical_derivative(mobius(a, b, c, d), z), expected) <= 1e-12);
    }
    // exactly at a pole
    FunctionExpr m = mobius(1, 0, 1, -0.5);
    double at_pole = 0.5 / (std::norm(Complex(0.5)) + 0.0);
    CHECK(rel(spherical_derivative(m, 0.5), at_pole) <= 1e-12);
}

TEST_CASE("critical points are rejected")
{
    FunctionExpr sq = pow(FunctionExpr::variable(), 2.0);
    CHECK_THROWS_AS(schwarzian(sq, 0.0), CriticalPointError);
    CHECK(spherical_derivative(sq, 0.0) == 0.0);
}

TEST_CASE("grid infimum estimator")
{
    GridSpec grid{0.999, 80, 64, true};
    FunctionExpr rot = unitary_rotation(0.6, Complex(0, 0.8));
    EpsilonEstimate e = inf_spherical(rot, grid);
    double expected = 1.0 / (1.0 + 0.999 * 0.999);
    CHECK(std::fabs(e.value - expected) <= 1e-6);
    CHECK_FALSE(e.is_analytic);
    CHECK(std::abs(e.argmin) <= grid.r_max + 1e-12);

    // identity: estimate approaches 1/2 from above as r_max -> 1
    FunctionExpr z = FunctionExpr::variable();
    double last = 1.0;
    for (double r : {0.9, 0.99, 0.999}) {
        GridSpec g{r, 40, 32, true};
        double v = inf_spherical(z, g).value;
        CHECK(v <= last + 1e-12);
        last = v;
    }
    CHECK(std::fabs(last - 0.5) <= 1e-3);

    // extremal family: argmin sits near +-i r_max and the value matches the
    // measured relation lambda/(2 cosh(pi lambda/2)), not the factor-2 variant
    GridSpec dense{0.999, 160, 128, true};
    EpsilonEstimate h = inf_spherical(hille(0.7637), dense);
    double measured = family_infimum(0.7637);
    CHECK(rel(h.value, measured) <= 2e-3);
    CHECK(rel(h.value, 2.0 * measured) > 0.4);
    double ang = std::arg(h.argmin);
    double dist_to_i = std::min(std::fabs(ang - M_PI / 2.0), std::fabs(ang + M_PI / 2.0));
    CHECK(dist_to_i <= 0.1);
}

TEST_CASE("grid infimum is monotone in r_max")
{
    for (const FunctionExpr& f : {hille(1.0), exp(FunctionExpr::variable())}) {
        double last = std::numeric_limits<double>::infinity();
        for (double r : {0.9, 0.95, 0.999}) {
            GridSpec g{r, 60, 48, true};
            double v = inf_spherical(f, g).value;
            CHECK(v <= last + 1e-12);
            last = v;
        }
    }
}

TEST_CASE("dense-grid oracle confirms the boundary infimum of the family")
{
    // ladder along r_max: the grid minimum decreases toward the closed form
    double lambda = 1.0;
    double limit = family_infimum(lambda);
    double prev = std::numeric_limits<double>::infinity();
    for (double r : {0.99, 0.999, 0.9999}) {
        double v = dense_min_spherical(hille(lambda), r, 60, 256);
        CHECK(v >= limit - 1e-12);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
    CHECK(rel(prev, limit) <= 1e-3);
    // and stays far from the factor-2 misprint
    CHECK(rel(prev, 2.0 * limit) > 0.4);
}

TEST_CASE("grid spec validation")
{
    GridSpec bad_radius{1.5, 10, 10, false};
    CHECK_THROWS_AS(bad_radius.validate(), std::invalid_argument);
    GridSpec bad_count{0.5, 0, 10, false};
    CHECK_THROWS_AS(bad_count.validate(), std::invalid_argument);
    GridSpec g{0.9, 5, 8, true};
    auto rs = g.radii();
    CHECK(rs.size() == 5);
    CHECK(rs.back() == doctest::Approx(0.9));
    for (size_t i = 1; i < rs.size(); i++)
        CHECK(rs[i] > rs[i - 1]);
    // refined radii cluster toward the boundary
    CHECK(rs[4] - rs[3] < rs[1] - rs[0]);
}

#include <doctest.h>

#include "test_util.hpp"
#include "unidisc/diffgeo.hpp"
#include "unidisc/oracle.hpp"
#include "unidisc/parser.hpp"

using namespace unidisc;
using testutil::check_close;
using testutil::check_jet;

TEST_CASE("eval at regular points and poles")
{
    FunctionExpr z = FunctionExpr::variable();
    EvalResult r = z.eval(0.3);
    REQUIRE(r.finite_jet.has_value());
    CHECK_FALSE(r.at_pole);
    check_jet(*r.finite_jet, {0.3, 1.0, 0.0, 0.0}, 0.0);

    // 1/z at 0: pole, jet of the reciprocal is the jet of z
    FunctionExpr inv = parse_function("1/z");
    EvalResult p = inv.eval(0.0);
    CHECK(p.at_pole);
    REQUIRE(p.reciprocal_jet.has_value());
    CHECK_FALSE(p.finite_jet.has_value());
    check_jet(*p.reciprocal_jet, {0.0, 1.0, 0.0, 0.0}, 0.0);

    // hille(1) at 0: f = 1, f' = 2 i lambda
    EvalResult h = hille(1.0).eval(0.0);
    REQUIRE(h.finite_jet.has_value());
    check_close(h.finite_jet->d0, 1.0, 1e-14);
    check_close(h.finite_jet->d1, Complex(0.0, 2.0), 1e-14);
}

TEST_CASE("finite and reciprocal jets are mutually reciprocal")
{
    SplitMix64 rng(11);
    int checked = 0;
    while (checked < 30) {
        FunctionExpr f = random_expression(rng, 3);
        Complex z = rng.disc_point(0.8);
        EvalResult r;
        try {
            r = f.eval(z);
        } catch (const JetError&) {
            continue;
        }
        if (!r.finite_jet || !r.reciprocal_jet)
            continue;
        checked++;
        // the reciprocal tree evaluates to the same jet as 1/finite_jet
        Jet3 direct;
        try {
            direct = f.reciprocal().eval_jet(z);
        } catch (const JetError&) {
            continue;
        }
        check_jet(direct, *r.reciprocal_jet, 1e-10);
        Jet3 product = *r.finite_jet * *r.reciprocal_jet;
        check_jet(product, Jet3::constant(1.0), 1e-10);
    }
}

TEST_CASE("eval rejects inputs where neither f nor 1/f evaluates")
{
    // essential-singularity-like breakdown
    CHECK_THROWS_AS(parse_function("exp(1/z)").eval(0.0), JetError);
    // removable singularity: the algebra does not cancel z/z
    CHECK_THROWS_AS(parse_function("z/z").eval(0.0), JetError);
}

TEST_CASE("simple poles of locally univalent functions")
{
    // at a simple pole the reciprocal jet has value exactly 0 and d1 != 0
    FunctionExpr m = mobius(1.0, 0.0, 1.0, -0.5);  // z/(z - 0.5)
    EvalResult r = m.eval(0.5);
    CHECK(r.at_pole);
    CHECK(r.reciprocal_jet->d0 == Complex(0.0));
    CHECK(std::abs(r.reciprocal_jet->d1) > 0.0);
}

TEST_CASE("mobius constructors")
{
    SplitMix64 rng(12);
    FunctionExpr ident = mobius(1, 0, 0, 1);
    for (int n = 0; n < 10; n++) {
        Complex z = rng.disc_point(0.95);
        check_close(ident.eval_jet(z).d0, z, 1e-15);
    }
    check_close(mobius(0, 1, 1, 0).eval_jet(0.5).d0, 2.0, 1e-15);
    check_close(mobius(1, Complex(0, 1), Complex(0, 1), 1).eval_jet(0.0).d0, Complex(0, 1), 1e-15);
    CHECK_THROWS_AS(mobius(1, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(mobius(2, 4, 1, 2), std::invalid_argument);
}

TEST_CASE("unitary rotations")
{
    FunctionExpr r0 = unitary_rotation(1, 0);
    check_close(r0.eval_jet(Complex(0.3, 0.2)).d0, Complex(0.3, 0.2), 1e-15);

    // (0 z + 1)/(-z + 0) = -1/z
    FunctionExpr r1 = unitary_rotation(0, 1);
    check_close(r1.eval_jet(0.5).d0, -2.0, 1e-15);

    CHECK_THROWS_AS(unitary_rotation(0.6, 0.9), std::invalid_argument);

    // spherical derivative of any rotation is 1/(1+|z|^2)
    SplitMix64 rng(13);
    for (int n = 0; n < 20; n++) {
        double phase_a = rng.uniform(0, 2 * M_PI), phase_b = rng.uniform(0, 2 * M_PI);
        double c = rng.uniform(0.05, 0.95);
        FunctionExpr rot = unitary_rotation(std::polar(std::sqrt(c), phase_a),
                                            std::polar(std::sqrt(1.0 - c), phase_b));
        Complex z = rng.disc_point(0.95);
        CHECK(testutil::rel(spherical_derivative(rot, z), 1.0 / (1.0 + std::norm(z))) <= 1e-12);
    }
}

TEST_CASE("hille family members")
{
    check_close(hille(1.0).eval_jet(0.0).d0, 1.0, 1e-15);
    // (1+i)/(1-i) = i, log i = i pi/2, so f(i) = e^{-pi/2}
    check_close(hille(1.0).eval_jet(Complex(0, 1)).d0, 0.20787957635076190, 1e-13);
    // unimodular on the real axis
    SplitMix64 rng(14);
    for (int n = 0; n < 20; n++) {
        double lambda = rng.uniform(0.2, 2.5);
        double x = rng.uniform(-0.95, 0.95);
        CHECK(std::fabs(std::abs(hille(lambda).eval_jet(x).d0) - 1.0) <= 1e-12);
    }
    CHECK_THROWS_AS(hille(0.0), std::invalid_argument);
    CHECK_THROWS_AS(hille(-1.0), std::invalid_argument);
}

TEST_CASE("spherical derivative is invariant under post-rotation")
{
    SplitMix64 rng(15);
    FunctionExpr members[] = {hille(0.8), exp(FunctionExpr::variable()),
                              mobius(1, 0, 1, -0.5)};
    for (const FunctionExpr& f : members) {
        for (int n = 0; n < 20; n++) {
            double c = rng.uniform(0.05, 0.95);
            FunctionExpr rot = unitary_rotation(std::polar(std::sqrt(c), rng.uniform(0, 6.28)),
                                                std::polar(std::sqrt(1.0 - c), rng.uniform(0, 6.28)));
            FunctionExpr composed = rot.substitute(f);
            Complex z = rng.disc_point(0.9);
            double a = spherical_derivative(composed, z);
            double b = spherical_derivative(f, z);
            CHECK(testutil::rel(a, b) <= 1e-10);
        }
    }
}

TEST_CASE("parser builds the documented trees")
{
    CHECK(parse_function("z") == FunctionExpr::variable());
    CHECK(parse_function("hille(0.7637)") == hille(0.7637));
    FunctionExpr expected = exp(Complex(2.0) * FunctionExpr::variable());
    CHECK(parse_function("exp(2*z)") == expected);
    CHECK(parse_function("mobius(1,0,0,1)") == mobius(1, 0, 0, 1));
    CHECK(parse_function("mobius(1, i, i, 1)") == mobius(1, Complex(0, 1), Complex(0, 1), 1));
}

TEST_CASE("composition by substitution")
{
    FunctionExpr z = FunctionExpr::variable();
    FunctionExpr sq = z * z;
    FunctionExpr shifted = sq.substitute(z + FunctionExpr::constant(1.0));
    check_close(shifted.eval_jet(0.5).d0, 2.25, 1e-15);
    CHECK(parse_function("z*z @ z+1") == shifted);
    // pre-composition with a disc automorphism keeps evaluation consistent
    FunctionExpr pre = hille(1.0).substitute(mobius(1, -0.3, -0.3, 1));
    Complex w = mobius(1, -0.3, -0.3, 1).eval_jet(0.2).d0;
    check_close(pre.eval_jet(0.2).d0, hille(1.0).eval_jet(w).d0, 1e-13);
}

TEST_CASE("canonical print round-trips")
{
    SplitMix64 rng(16);
    for (int n = 0; n < 200; n++) {
        FunctionExpr t = random_expression(rng, 4);
        FunctionExpr back = parse_function(t.print());
        CHECK(back == t);
    }
    // families and constant corner cases
    for (const FunctionExpr& t :
         {hille(0.7637), mobius(1, Complex(0, 1), Complex(0.5, -0.25), 2),
          pow(FunctionExpr::variable(), Complex(0.5, -1.5)),
          FunctionExpr::constant(Complex(-1.0, 1.0)), FunctionExpr::constant(Complex(0.0, -1.0)),
          pow(pow(FunctionExpr::variable(), 2.0), Complex(0, 1))}) {
        CHECK(parse_function(t.print()) == t);
    }
}

TEST_CASE("parser survives arbitrary input")
{
    const char charset[] = "z+-*/^()@, .0123456789iexploghilmbus$";
    SplitMix64 rng(17);
    for (int n = 0; n < 500; n++) {
        size_t len = 1 + rng.next() % 32;
        std::string text;
        for (size_t k = 0; k < len; k++)
            text += charset[rng.next() % (sizeof charset - 1)];
        try {
            FunctionExpr f = parse_function(text);
            CHECK(parse_function(f.print()) == f);
        } catch (const ParseError&) {
        } catch (const std::invalid_argument&) {
            // degenerate mobius / nonpositive hille parameters
        }
    }
    std::string deep(10000, '(');
    CHECK_THROWS_AS(parse_function(deep + "z" + std::string(10000, ')')), ParseError);
}

TEST_CASE("parse errors carry positions")
{
    CHECK_THROWS_AS(parse_function(""), ParseError);
    CHECK_THROWS_AS(parse_function("z +"), ParseError);
    CHECK_THROWS_AS(parse_function("foo(3)"), ParseError);
    CHECK_THROWS_AS(parse_function("hille(-1)"), ParseError);
    CHECK_THROWS_AS(parse_function("(1+2i"), ParseError);
    try {
        parse_function("z + $");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK(parse_complex("0.5+0i") == Complex(0.5, 0.0));
    CHECK(parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(parse_complex("2i") == Complex(0.0, 2.0));
    CHECK_THROWS_AS(parse_complex("1+2"), ParseError);
}

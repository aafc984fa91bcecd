#include <doctest.h>

#include <sstream>

#include "test_util.hpp"
#include "unidisc/corpus.hpp"
#include "unidisc/factorize.hpp"
#include "unidisc/hille.hpp"
#include "unidisc/parser.hpp"

using namespace unidisc;
using testutil::check_close;

TEST_CASE("initial conditions fix the normalized pair")
{
    const Complex i(0, 1);
    FunctionExpr z = FunctionExpr::variable();

    InitialConditions lin = initial_conditions(z, 0.0);
    check_close(lin.w2, i, 1e-15);
    check_close(lin.w2p, 0.0, 1e-15);
    check_close(lin.w1, 0.0, 1e-15);
    check_close(lin.w1p, i, 1e-15);

    InitialConditions ex = initial_conditions(exp(z), 0.0);
    check_close(ex.w2, i, 1e-15);
    check_close(ex.w2p, -0.5 * i, 1e-15);
    check_close(ex.w1, i, 1e-15);
    check_close(ex.w1p, 0.5 * i, 1e-15);

    InitialConditions two = initial_conditions(Complex(2.0) * z, 0.0);
    check_close(two.w2, i / std::sqrt(2.0), 1e-15);
    check_close(two.w1, 0.0, 1e-15);
    check_close(two.w1p, i * std::sqrt(2.0), 1e-15);

    // the Wronskian w1 w2' - w1' w2 = 1 at the base point
    for (const InitialConditions& ic : {lin, ex, two})
        check_close(ic.w1 * ic.w2p - ic.w1p * ic.w2, 1.0, 1e-15);
}

TEST_CASE("initial conditions reject poles and critical points")
{
    CHECK_THROWS_AS(initial_conditions(parse_function("1/z"), 0.0), PoleAtBaseError);
    CHECK_THROWS_AS(initial_conditions(pow(FunctionExpr::variable(), 2.0), 0.0),
                    CriticalPointError);
}

TEST_CASE("integration anchors with closed-form solutions")
{
    const Complex i(0, 1);
    FunctionExpr z = FunctionExpr::variable();

    // S_f = 0 for f = z: both solutions are linear
    PathSolution lin = integrate_path(z, 0.0, 0.9, 1e-10);
    check_close(lin.samples.back().w1, 0.9 * i, 1e-12);
    check_close(lin.samples.back().w2, i, 1e-12);
    CHECK(lin.wronskian_drift <= 1e-13);

    // S_f = -1/2 for f = exp(z): w = i e^{+-z/2}
    PathSolution ex = integrate_path(exp(z), 0.0, 1.0, 1e-10);
    check_close(ex.samples.back().w1, i * 1.6487212707001282, 1e-9);
    check_close(ex.samples.back().w2, i * 0.60653065971263342, 1e-9);
    for (const PathSample& s : ex.samples) {
        check_close(s.w1, i * std::exp(0.5 * s.z), 1e-8);
        check_close(s.w2, i * std::exp(-0.5 * s.z), 1e-8);
    }

    // reconstruction of the extremal family member along a segment
    PathSolution hi = integrate_path(hille(1.0), 0.0, 0.8, 1e-10);
    CHECK(hi.reconstruction_error <= 1e-9);
    CHECK(hi.wronskian_drift <= 1e-9);
}

TEST_CASE("verify_factorization recomputes the proof identities")
{
    FunctionExpr z = FunctionExpr::variable();
    EpsilonEstimate half = EpsilonEstimate::analytic(0.5, 1.0);

    PathSolution lin = integrate_path(z, 0.0, 0.9, 1e-10);
    FactorizationReport rep = verify_factorization(lin, z, half);
    CHECK(rep.norm_identity_error <= 1e-12);
    CHECK(rep.schwarzian_identity_error <= 1e-12);
    CHECK(rep.eps_bound_check);

    // 1/f^#(x) = 2 cosh x for f = exp(z)
    FunctionExpr ex = exp(z);
    EpsilonEstimate exp_eps = EpsilonEstimate::analytic(1.0 / (2.0 * std::cosh(1.0)), 1.0);
    PathSolution sol = integrate_path(ex, 0.0, 1.0, 1e-10);
    FactorizationReport rex = verify_factorization(sol, ex, exp_eps);
    CHECK(rex.norm_identity_error <= 1e-8);
    CHECK(rex.eps_bound_check);
    for (const PathSample& s : sol.samples) {
        double norm_sum = std::norm(s.w1) + std::norm(s.w2);
        CHECK(testutil::rel(norm_sum, 2.0 * std::cosh(s.z.real())) <= 1e-8);
    }

    // extremal member with its analytic epsilon
    const CorpusEntry* h = corpus_find("hille_0764");
    REQUIRE(h != nullptr);
    EpsilonEstimate heps = corpus_epsilon(*h, default_epsilon_grid());
    PathSolution hsol = integrate_path(h->expr, 0.0, Complex(0, 0.8), 1e-10);
    CHECK(verify_factorization(hsol, h->expr, heps).eps_bound_check);
}

TEST_CASE("the normalization identity f' = -1/w2^2 holds along paths")
{
    FunctionExpr z = FunctionExpr::variable();
    for (const FunctionExpr& f : {exp(z), hille(1.0), hille(0.3)}) {
        PathSolution sol = integrate_path(f, 0.0, Complex(0.5, 0.6), 1e-10);
        for (const PathSample& s : sol.samples) {
            Complex fp = f.eval_jet(s.z).d1;
            // w2 is the sign-continuous square root of -1/f', so the squared
            // relation is branch-free
            check_close(s.w2 * s.w2 * fp, Complex(-1.0), 1e-8);
        }
    }
}

TEST_CASE("integration crosses poles of f where S_f stays holomorphic")
{
    // z/(z - 0.5) has a pole at 0.5 on the path; S_f = 0 there, w2 just
    // passes through a zero
    FunctionExpr m = mobius(1, 0, 1, -0.5);
    PathSolution sol = integrate_path(m, 0.0, 0.9, 1e-10);
    CHECK(sol.wronskian_drift <= 1e-10);
    CHECK(sol.reconstruction_error <= 1e-8);
    EpsilonEstimate eps = EpsilonEstimate::analytic(0.5 / 3.25, Complex(-1.0, 0.0));
    FactorizationReport rep = verify_factorization(sol, m, eps);
    CHECK(rep.norm_identity_error <= 1e-8);
    CHECK(rep.eps_bound_check);
}

TEST_CASE("sign flip leaves every diagnostic unchanged")
{
    FunctionExpr f = hille(0.9);
    PathSolution sol = integrate_path(f, 0.0, Complex(0.5, 0.4), 1e-10);
    PathSolution flipped = sol;
    for (PathSample& s : flipped.samples) {
        s.w1 = -s.w1;
        s.w1p = -s.w1p;
        s.w2 = -s.w2;
        s.w2p = -s.w2p;
    }
    EpsilonEstimate eps = EpsilonEstimate::analytic(family_infimum(0.9), Complex(0, 1));
    FactorizationReport a = verify_factorization(sol, f, eps);
    FactorizationReport b = verify_factorization(flipped, f, eps);
    CHECK(a.norm_identity_error == b.norm_identity_error);
    CHECK(a.schwarzian_identity_error == b.schwarzian_identity_error);
    CHECK(a.eps_bound_check == b.eps_bound_check);
}

TEST_CASE("halving the tolerance does not worsen the drift")
{
    FunctionExpr f = hille(1.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double tol : {1e-7, 5e-8, 2.5e-8, 1.25e-8}) {
        PathSolution sol = integrate_path(f, 0.0, Complex(0, 0.9), tol);
        double drift = sol.wronskian_drift;
        CHECK(drift <= std::max(prev, 2e-13));
        prev = drift;
    }
}

TEST_CASE("paths into a singularity of S_f underflow")
{
    // hille blows up at z = 1; the step control must refuse to cross it
    CHECK_THROWS_AS(integrate_path(hille(1.0), 0.0, 1.0, 1e-10), StepSizeUnderflowError);
}

TEST_CASE("CSV serialization of a path")
{
    PathSolution sol = integrate_path(FunctionExpr::variable(), 0.0, 0.5, 1e-10);
    std::ostringstream out;
    write_csv(sol, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line ==
          "z_re,z_im,w1_re,w1_im,w1p_re,w1p_im,w2_re,w2_im,w2p_re,w2p_im,wronskian_abs_err");
    size_t rows = 0;
    while (std::getline(in, line)) {
        rows++;
        CHECK(std::count(line.begin(), line.end(), ',') == 10);
    }
    CHECK(rows == sol.samples.size());
}

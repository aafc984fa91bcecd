#include "unidisc/acceptance.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "unidisc/bounds.hpp"
#include "unidisc/characteristic.hpp"
#include "unidisc/cli.hpp"
#include "unidisc/corpus.hpp"
#include "unidisc/hille.hpp"
#include "unidisc/oracle.hpp"

namespace unidisc {

namespace {

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double rel_to(Complex got, Complex want)
{
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// a pole at the base point is moved away from infinity by post-composing
/// with the rotation w -> -1/w
FunctionExpr rotate_if_pole_at(const FunctionExpr& f, Complex z0)
{
    if (!f.eval(z0).at_pole)
        return f;
    return rotate_sphere(0.0, 1.0, f);
}

bool is_rotation_entry(const std::string& name)
{
    return name == "identity" || name == "reciprocal" || name == "scale_i" ||
           name == "rotation_a" || name == "rotation_b";
}

// ---------------------------------------------------------------- criterion 1

CriterionResult criterion_ad(uint64_t seed)
{
    const double h = 1e-5;
    const double tol = 1e-6;
    const Complex dirs[3] = {Complex(1.0, 0.0), Complex(0.0, 1.0),
                             std::polar(1.0, M_PI / 4.0)};
    SplitMix64 rng(seed ^ 0x1111111111111111ull);
    double worst = 0.0;
    int accepted = 0, draws = 0;
    while (accepted < 20 && draws < 4000) {
        draws++;
        FunctionExpr f = random_expression(rng, 3);
        Complex z = rng.disc_point(0.8);
        Complex dir = dirs[rng.next() % 3];

        // admissibility: the jet and the whole difference stencil must
        // evaluate with moderate components
        bool ok = true;
        Jet3 center{};
        try {
            center = f.eval_jet(z);
            double m = std::max({std::abs(center.d0), std::abs(center.d1),
                                 std::abs(center.d2), std::abs(center.d3)});
            if (m > 100.0)
                ok = false;
            for (int s = -2; s <= 2 && ok; s++) {
                Jet3 j = f.eval_jet(z + double(s) * h * dir);
                if (std::max({std::abs(j.d0), std::abs(j.d1), std::abs(j.d2), std::abs(j.d3)}) > 100.0)
                    ok = false;
                (void)oracle_value(f, z + double(s) * h * dir);
            }
        } catch (const JetError&) {
            ok = false;
        }
        if (!ok)
            continue;
        accepted++;

        // d1 against difference quotients of the independent evaluator,
        // d2 and d3 against difference quotients of the next-lower jet order
        Complex fd1 = central_diff4([&](Complex w) { return oracle_value(f, w); }, z, dir, h);
        Complex fd2 = central_diff4([&](Complex w) { return f.eval_jet(w).d1; }, z, dir, h);
        Complex fd3 = central_diff4([&](Complex w) { return f.eval_jet(w).d2; }, z, dir, h);
        double e1 = std::abs(center.d1 - fd1) / std::max(std::abs(center.d1), 1.0);
        double e2 = std::abs(center.d2 - fd2) / std::max(std::abs(center.d2), 1.0);
        double e3 = std::abs(center.d3 - fd3) / std::max(std::abs(center.d3), 1.0);
        worst = std::max({worst, e1, e2, e3});
    }
    bool pass = accepted == 20 && worst <= tol;
    return {1, "jets vs finite differences",
            pass,
            std::to_string(accepted) + " expressions, max rel err " + fmt(worst) + " (tol 1e-06)"};
}

// ---------------------------------------------------------------- criterion 2

CriterionResult criterion_closed_forms(uint64_t seed)
{
    SplitMix64 rng(seed ^ 0x2222222222222222ull);
    const double tol = 1e-10;
    double worst_sph = 0.0, worst_schw = 0.0;
    for (int n = 0; n < 100; n++) {
        double lambda = rng.uniform(0.2, 2.2);
        Complex z = rng.disc_point(0.9);
        FunctionExpr f = hille(lambda);
        worst_sph = std::max(worst_sph,
                             rel_to(spherical_derivative(f, z), hille_spherical_closed(lambda, z)));
        worst_schw = std::max(worst_schw, rel_to(schwarzian(f, z), hille_schwarzian_closed(lambda, z)));
    }
    // the closed form carries (1-z^2)^2; verify the jet evaluation rejects the
    // modulus variant off the real axis
    Complex z_off(0.0, 0.5);
    Complex ad = schwarzian(hille(1.0), z_off);
    Complex analytic = hille_schwarzian_closed(1.0, z_off);
    double s = 1.0 - std::norm(z_off);
    Complex modulus_print = 4.0 / (s * s);
    bool adjudicated = rel_to(ad, analytic) <= tol && rel_to(ad, modulus_print) > 1e-2;
    bool pass = worst_sph <= tol && worst_schw <= tol && adjudicated;
    return {2, "Hille closed forms vs jets", pass,
            "max rel err f# " + fmt(worst_sph) + ", S_f " + fmt(worst_schw) +
                "; S at 0.5i = " + fmt(ad.real()) + " matches (1-z^2)^-2 form (modulus form " +
                fmt(modulus_print.real()) + ")"};
}

// ---------------------------------------------------------------- criterion 3

CriterionResult criterion_factorization()
{
    const double tol = 1e-8;
    GridSpec eps_grid = default_epsilon_grid();
    double drift = 0.0, recon = 0.0, norm_err = 0.0, schw_err = 0.0;
    bool eps_ok = true;
    for (const CorpusEntry& entry : corpus()) {
        EpsilonEstimate eps = corpus_epsilon(entry, eps_grid);
        FunctionExpr f = rotate_if_pole_at(entry.expr, 0.0);
        for (int k = 0; k < 8; k++) {
            Complex z1 = std::polar(0.9, M_PI * k / 4.0);
            PathSolution sol = integrate_path(f, 0.0, z1, 1e-10);
            FactorizationReport rep = verify_factorization(sol, f, eps);
            drift = std::max(drift, sol.wronskian_drift);
            recon = std::max(recon, sol.reconstruction_error);
            norm_err = std::max(norm_err, rep.norm_identity_error);
            schw_err = std::max(schw_err, rep.schwarzian_identity_error);
            eps_ok = eps_ok && rep.eps_bound_check;
        }
    }
    bool pass = drift <= tol && recon <= tol && norm_err <= tol && schw_err <= tol && eps_ok;
    return {3, "factorization identities on the corpus", pass,
            "max wronskian drift " + fmt(drift) + ", reconstruction " + fmt(recon) +
                ", norm identity " + fmt(norm_err) + ", schwarzian identity " + fmt(schw_err) +
                ", eps bound " + (eps_ok ? "ok" : "violated")};
}

// ---------------------------------------------------------------- criterion 4

CriterionResult criterion_anchors()
{
    const double tol = 1e-8;
    const Complex i(0.0, 1.0);
    FunctionExpr z = FunctionExpr::variable();
    PathSolution lin = integrate_path(z, 0.0, 0.9, 1e-10);
    Complex w1_lin = lin.samples.back().w1, w2_lin = lin.samples.back().w2;
    double err_lin = std::max(std::abs(w1_lin - 0.9 * i), std::abs(w2_lin - i));

    PathSolution ex = integrate_path(exp(z), 0.0, 1.0, 1e-10);
    Complex w1_ex = ex.samples.back().w1, w2_ex = ex.samples.back().w2;
    double err_ex = std::max(std::abs(w1_ex - i * std::exp(0.5)), std::abs(w2_ex - i * std::exp(-0.5)));

    bool pass = err_lin <= tol && err_ex <= tol;
    return {4, "closed-form factorization anchors", pass,
            "f=z endpoint err " + fmt(err_lin) + ", f=exp endpoint err " + fmt(err_ex) +
                " (w1(1) = " + fmt(w1_ex.imag()) + "i)"};
}

// ---------------------------------------------------------------- criterion 5

CriterionResult criterion_bounds()
{
    GridSpec check_grid{0.95, 100, 64, false};
    GridSpec eps_grid = default_epsilon_grid();
    const Complex i(0.0, 1.0);
    int violations = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (const CorpusEntry& entry : corpus()) {
        EpsilonEstimate eps = corpus_epsilon(entry, eps_grid);
        auto [sph, schw] = check_theorem_bounds(entry.expr, eps, check_grid);
        BoundReport sp = check_schwarz_pick(entry.expr, eps, check_grid);
        violations += sph.violations() + schw.violations() + sp.violations();
        min_margin = std::min({min_margin, sph.min_margin(), schw.min_margin(), sp.min_margin()});
        FunctionExpr f = rotate_if_pole_at(entry.expr, 0.0);
        for (Complex dir : {Complex(1.0), i}) {
            PathSolution sol = integrate_path(f, 0.0, 0.9 * dir, 1e-10);
            auto [c1, c2] = check_cauchy_estimates(sol, f, eps);
            violations += c1.violations() + c2.violations();
            min_margin = std::min({min_margin, c1.min_margin(), c2.min_margin()});
        }
    }
    // exit-code semantics: a deliberately oversized eps must produce exit 2
    std::ostringstream sink;
    int code = cli_run({"bounds", "theorem", "--fn", "z", "--eps", "10", "--rmax", "0.5",
                        "--nr", "4", "--na", "4"},
                       sink, sink);
    bool pass = violations == 0 && code == 2;
    return {5, "theorem, Schwarz-Pick and Cauchy bounds", pass,
            std::to_string(violations) + " violations on the corpus, min margin " + fmt(min_margin) +
                "; forced-violation exit code " + std::to_string(code)};
}

// ---------------------------------------------------------------- criterion 6

CriterionResult criterion_subharmonic(uint64_t seed)
{
    SplitMix64 rng(seed ^ 0x6666666666666666ull);
    size_t violations = 0, skipped = 0;
    int checked = 0;
    for (const CorpusEntry& entry : corpus()) {
        std::vector<Complex> pts(500);
        for (Complex& p : pts)
            p = rng.disc_point(0.985);
        SubharmonicResult res = subharmonic_check(entry.expr, pts, 1e-2, 64);
        violations += res.violations.size();
        skipped += res.skipped.size();
        checked += res.n_checked;
    }
    bool pass = violations == 0;
    return {6, "minimum principle (sub-mean-value of -log f#)", pass,
            std::to_string(checked) + " centers checked, " + std::to_string(violations) +
                " violations, " + std::to_string(skipped) + " skipped"};
}

// ---------------------------------------------------------------- criterion 7

CriterionResult criterion_rigidity()
{
    GridSpec grid{0.999, 100, 64, true};
    bool pass = true;
    double worst_inf_gap = 0.0, worst_dev = 0.0;
    std::string offender;
    for (const CorpusEntry& entry : corpus()) {
        RigidityProbe probe = rigidity_probe(entry.expr, grid);
        if (probe.exceeds_half) {
            pass = false;
            offender = entry.name;
        }
        if (is_rotation_entry(entry.name)) {
            double gap = std::fabs(probe.inf_est.value - 0.5);
            worst_inf_gap = std::max(worst_inf_gap, gap);
            if (gap > 1e-3 || !probe.rotation_match)
                pass = false;
            if (probe.rotation_match) {
                worst_dev = std::max(worst_dev, probe.rotation_match->max_dev);
                if (probe.rotation_match->max_dev > 1e-10)
                    pass = false;
            }
        }
    }
    return {7, "rigidity probe (no f exceeds 1/2; rotations recovered)", pass,
            offender.empty()
                ? "exceeds_half false everywhere; rotation inf gap " + fmt(worst_inf_gap) +
                      ", fit deviation " + fmt(worst_dev)
                : "exceeds_half true for " + offender};
}

// ---------------------------------------------------------------- criterion 8

CriterionResult criterion_epsilon0()
{
    Epsilon0 e = epsilon0();
    double residual = std::fabs(std::tanh(e.t0) - 1.0 / e.t0);
    bool pass = std::fabs(e.eps0 - 0.4219) <= 1e-3 && residual <= 1e-12;
    return {8, "extremal constant eps0", pass,
            "t0 = " + fmt(e.t0) + " (residual " + fmt(residual) + "), lambda0 = " + fmt(e.lambda0) +
                ", eps0 = " + fmt(e.eps0) + " (target 0.4219 +- 1e-3)"};
}

// ---------------------------------------------------------------- criterion 9

CriterionResult criterion_phi(std::vector<std::string>& notes)
{
    const double family_max = family_infimum(epsilon0().lambda0);
    std::vector<double> rs;
    for (int k = 1; k <= 9; k++)
        rs.push_back(0.1 * k);

    bool pass = true;
    std::string curve_info;
    for (double eps : {0.1, 0.2, 0.3, family_max}) {
        if (eps > family_max) {
            // the measured family infimum is lambda/(2 cosh(pi lambda/2)) with
            // maximum eps0/2 ~ 0.211; above it no family member qualifies and
            // lambda_star must refuse
            try {
                phi_lower_curve(eps, rs);
                pass = false;
                curve_info += " eps=" + fmt(eps) + ":missing-EpsTooLarge";
            } catch (const EpsTooLargeError&) {
                notes.push_back("eps = " + fmt(eps) + " exceeds the measured family maximum " +
                                fmt(family_max) + "; EpsTooLarge confirmed");
            }
            continue;
        }
        PhiCurve curve = phi_lower_curve(eps, rs);
        double worst_const = 0.0;
        for (const PhiRow& row : curve.rows) {
            if (row.lower > row.upper)
                pass = false;
            worst_const = std::max(worst_const,
                                   std::fabs(row.lower * (1.0 - row.r * row.r) - curve.lambda_star));
        }
        if (worst_const > 1e-10 * std::max(1.0, curve.lambda_star))
            pass = false;
        curve_info += " eps=" + fmt(eps) + ":lam*=" + fmt(curve.lambda_star);
    }

    // asymptotic inversion: lambda*(1e-k) pi/(2 k ln 10) decreases toward 1
    double prev = std::numeric_limits<double>::infinity();
    std::string ratios;
    for (int k : {3, 6, 9}) {
        double lam = lambda_star(std::pow(10.0, -k));
        double ratio = lam * M_PI / (2.0 * k * std::log(10.0));
        ratios += " " + fmt(ratio);
        if (!(ratio > 1.0) || !(ratio < prev))
            pass = false;
        prev = ratio;
    }
    return {9, "Phi-curve consistency and lambda* asymptotics", pass,
            "curves:" + curve_info + "; ratios ->1:" + ratios};
}

// --------------------------------------------------------------- criterion 10

CriterionResult criterion_characteristic()
{
    FunctionExpr z = FunctionExpr::variable();
    CharacteristicResult base = ahlfors_shimizu(z, 1.0 - 1e-6, 1e-9);
    double err_quarter_pi = std::fabs(base.value - M_PI / 4.0);

    const CorpusEntry* rot = corpus_find("rotation_a");
    CharacteristicResult rotated = ahlfors_shimizu(rot->expr, 1.0 - 1e-6, 1e-9);
    double err_invariance = std::fabs(rotated.value - base.value);

    CharacteristicResult constant = ahlfors_shimizu(FunctionExpr::constant(5.0), 1.0 - 1e-6, 1e-9);

    bool pass = err_quarter_pi <= 1e-6 && err_invariance <= 1e-8 && constant.value == 0.0;
    return {10, "Ahlfors-Shimizu characteristic", pass,
            "T(z) = " + fmt(base.value) + " (|err| " + fmt(err_quarter_pi) +
                "), rotation invariance " + fmt(err_invariance) + ", constant -> " +
                fmt(constant.value)};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(uint64_t seed)
{
    std::vector<CriterionResult> results;
    std::vector<std::string> notes;
    results.push_back(criterion_ad(seed));
    results.push_back(criterion_closed_forms(seed));
    results.push_back(criterion_factorization());
    results.push_back(criterion_anchors());
    results.push_back(criterion_bounds());
    results.push_back(criterion_subharmonic(seed));
    results.push_back(criterion_rigidity());
    results.push_back(criterion_epsilon0());
    results.push_back(criterion_phi(notes));
    results.push_back(criterion_characteristic());
    for (const std::string& n : notes)
        results[8].detail += "; note: " + n;
    return results;
}

void print_results(const std::vector<CriterionResult>& results, std::ostream& out)
{
    for (const CriterionResult& r : results) {
        char head[16];
        std::snprintf(head, sizeof head, "[%2d] ", r.id);
        out << head << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    }
}

bool all_pass(const std::vector<CriterionResult>& results)
{
    for (const CriterionResult& r : results)
        if (!r.pass)
            return false;
    return true;
}

}  // namespace unidisc

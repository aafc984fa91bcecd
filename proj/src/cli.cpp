#include "unidisc/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "unidisc/acceptance.hpp"
#include "unidisc/bounds.hpp"
#include "unidisc/characteristic.hpp"
#include "unidisc/corpus.hpp"
#include "unidisc/hille.hpp"
#include "unidisc/parser.hpp"

namespace unidisc {

namespace {

using nlohmann::json;

json complex_json(Complex z)
{
    return json{{"re", z.real()}, {"im", z.imag()}};
}

FunctionExpr parse_fn_flag(const std::string& text)
{
    return parse_function(text);
}

Complex parse_z_flag(const std::string& text)
{
    return parse_complex(text);
}

/// "--eps auto" measures on the default grid; otherwise a positive number is
/// taken as an analytic (caller-certified) infimum
EpsilonEstimate resolve_eps(const std::string& spec, const FunctionExpr& f, bool parallel)
{
    if (spec == "auto")
        return inf_spherical(f, default_epsilon_grid(), parallel);
    double v = std::stod(spec);
    if (!(v > 0.0))
        throw std::invalid_argument("--eps must be positive or 'auto'");
    return EpsilonEstimate::analytic(v, Complex(0.0));
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& writer)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file " + path);
    writer(out);
}

std::vector<double> parse_range(const std::string& spec)
{
    // START:END:STEP inclusive of both ends (up to a half-step slack)
    double start = 0.0, end = 0.0, step = 0.0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &end, &step) != 3 || !(step > 0.0))
        throw std::invalid_argument("range must be START:END:STEP with STEP > 0");
    std::vector<double> out;
    for (double r = start; r <= end + 0.5 * step; r += step)
        out.push_back(r);
    if (out.empty())
        throw std::invalid_argument("range is empty");
    return out;
}

int run_eval(const std::string& fn, const std::string& zs, std::ostream& out)
{
    FunctionExpr f = parse_fn_flag(fn);
    Complex z = parse_z_flag(zs);
    EvalResult res = f.eval(z);
    json j;
    j["z"] = complex_json(z);
    j["at_pole"] = res.at_pole;
    if (res.finite_jet) {
        j["f"] = complex_json(res.finite_jet->d0);
        j["fprime"] = complex_json(res.finite_jet->d1);
    } else {
        j["reciprocal"] = complex_json(res.reciprocal_jet->d0);
        j["reciprocal_prime"] = complex_json(res.reciprocal_jet->d1);
    }
    j["fsharp"] = spherical_derivative(f, z);
    j["schwarzian"] = complex_json(schwarzian(f, z));
    out << j.dump() << "\n";
    return 0;
}

int run_factor(const std::string& fn, const std::string& from, const std::string& to, double tol,
               const std::string& eps_spec, const std::string& out_path, bool parallel,
               std::ostream& out)
{
    FunctionExpr f = parse_fn_flag(fn);
    Complex z0 = parse_z_flag(from);
    Complex z1 = parse_z_flag(to);
    bool rotated = false;
    if (f.eval(z0).at_pole) {
        f = rotate_sphere(0.0, 1.0, f);  // w -> -1/w
        rotated = true;
    }
    EpsilonEstimate eps = resolve_eps(eps_spec, f, parallel);
    PathSolution sol = integrate_path(f, z0, z1, tol);
    FactorizationReport rep = verify_factorization(sol, f, eps);
    if (!out_path.empty())
        write_file(out_path, [&](std::ostream& os) { write_csv(sol, os); });
    json j;
    j["base"] = complex_json(z0);
    j["endpoint"] = complex_json(z1);
    j["rotated_pole_base"] = rotated;
    j["tol"] = tol;
    j["samples"] = sol.samples.size();
    j["wronskian_drift"] = sol.wronskian_drift;
    j["reconstruction_error"] = sol.reconstruction_error;
    j["norm_identity_error"] = rep.norm_identity_error;
    j["schwarzian_identity_error"] = rep.schwarzian_identity_error;
    j["eps"] = eps.value;
    j["eps_is_analytic"] = eps.is_analytic;
    j["eps_bound_check"] = rep.eps_bound_check;
    const PathSample& last = sol.samples.back();
    j["final"] = json{{"w1", complex_json(last.w1)},
                      {"w1p", complex_json(last.w1p)},
                      {"w2", complex_json(last.w2)},
                      {"w2p", complex_json(last.w2p)}};
    out << j.dump() << "\n";
    return 0;
}

std::string stem_with_suffix(const std::string& path, const std::string& suffix)
{
    size_t dot = path.rfind('.');
    if (dot == std::string::npos)
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

int run_bounds(const std::string& mode, const std::string& fn, const std::string& eps_spec,
               const GridSpec& grid, const std::string& to, int n_points, double delta,
               int n_circle, uint64_t seed, const std::string& out_path, bool parallel,
               std::ostream& out)
{
    FunctionExpr f = parse_fn_flag(fn);
    int worst = 0;

    auto emit = [&](const BoundReport& rep, const std::string& suffix) {
        out << summary_json(rep) << "\n";
        if (!out_path.empty())
            write_file(stem_with_suffix(out_path, suffix),
                       [&](std::ostream& os) { write_csv(rep, os); });
        worst = std::max(worst, rep.violations());
    };

    if (mode == "theorem") {
        EpsilonEstimate eps = resolve_eps(eps_spec, f, parallel);
        auto [sph, schw] = check_theorem_bounds(f, eps, grid, parallel);
        emit(sph, "_spherical");
        emit(schw, "_schwarzian");
    } else if (mode == "schwarzpick") {
        EpsilonEstimate eps = resolve_eps(eps_spec, f, parallel);
        emit(check_schwarz_pick(f, eps, grid, parallel), "");
    } else if (mode == "cauchy") {
        FunctionExpr fu = f;
        if (fu.eval(Complex(0.0)).at_pole)
            fu = rotate_sphere(0.0, 1.0, fu);
        EpsilonEstimate eps = resolve_eps(eps_spec, fu, parallel);
        PathSolution sol = integrate_path(fu, 0.0, parse_z_flag(to), 1e-10);
        auto [first, second] = check_cauchy_estimates(sol, fu, eps);
        emit(first, "_first");
        emit(second, "_second");
    } else if (mode == "subharmonic") {
        SplitMix64 rng(seed);
        std::vector<Complex> pts(n_points);
        double r_cap = std::min(0.985, 1.0 - 2.0 * delta);
        for (Complex& p : pts)
            p = rng.disc_point(r_cap);
        SubharmonicResult res = subharmonic_check(f, pts, delta, n_circle);
        json j;
        j["n_points"] = n_points;
        j["n_checked"] = res.n_checked;
        j["delta"] = delta;
        j["n_circle"] = n_circle;
        json viol = json::array(), skip = json::array();
        for (Complex v : res.violations)
            viol.push_back(complex_json(v));
        for (Complex s : res.skipped)
            skip.push_back(complex_json(s));
        j["violations"] = viol;
        j["skipped"] = skip;
        out << j.dump() << "\n";
        worst = int(res.violations.size());
    } else if (mode == "rigidity") {
        RigidityProbe probe = rigidity_probe(f, grid, parallel);
        json j;
        j["inf"] = probe.inf_est.value;
        j["argmin"] = complex_json(probe.inf_est.argmin);
        j["exceeds_half"] = probe.exceeds_half;
        if (probe.rotation_match) {
            j["rotation"] = json{{"a", complex_json(probe.rotation_match->a)},
                                 {"b", complex_json(probe.rotation_match->b)},
                                 {"max_dev", probe.rotation_match->max_dev}};
        }
        out << j.dump() << "\n";
        worst = probe.exceeds_half ? 1 : 0;
    } else {
        throw std::invalid_argument("unknown bounds mode " + mode);
    }
    return worst > 0 ? 2 : 0;
}

int run_hille(const std::string& mode, double eps, double lambda, const std::string& zs,
              std::ostream& out)
{
    json j;
    if (mode == "eps0") {
        Epsilon0 e = epsilon0();
        j["t0"] = e.t0;
        j["lambda0"] = e.lambda0;
        j["eps0"] = e.eps0;
        j["family_max_measured"] = family_infimum(e.lambda0);
    } else if (mode == "lambdastar") {
        j["eps"] = eps;
        j["lambda_star"] = lambda_star(eps);
    } else if (mode == "closedforms") {
        Complex z = parse_z_flag(zs);
        FunctionExpr f = hille(lambda);
        j["lambda"] = lambda;
        j["z"] = complex_json(z);
        j["fsharp_closed"] = hille_spherical_closed(lambda, z);
        j["fsharp_jet"] = spherical_derivative(f, z);
        j["schwarzian_closed"] = complex_json(hille_schwarzian_closed(lambda, z));
        j["schwarzian_jet"] = complex_json(schwarzian(f, z));
        j["family_infimum"] = family_infimum(lambda);
    } else {
        throw std::invalid_argument("unknown hille mode " + mode);
    }
    out << j.dump() << "\n";
    return 0;
}

int run_phi(double eps, const std::string& range, const std::string& out_path, std::ostream& out)
{
    std::vector<double> rs = parse_range(range);
    PhiCurve curve = phi_lower_curve(eps, rs);
    if (!out_path.empty()) {
        write_file(out_path, [&](std::ostream& os) { write_csv(curve, os); });
        json j;
        j["eps"] = curve.eps;
        j["lambda_star"] = curve.lambda_star;
        j["rows"] = curve.rows.size();
        j["out"] = out_path;
        out << j.dump() << "\n";
    } else {
        write_csv(curve, out);
    }
    return 0;
}

int run_charac(const std::string& fn, double cutoff, double tol, bool alt, std::ostream& out)
{
    CharacteristicResult res = ahlfors_shimizu(parse_fn_flag(fn), cutoff, tol, alt);
    json j;
    j["value"] = res.value;
    j["rho_cutoff"] = res.rho_cutoff;
    j["quad_error_estimate"] = res.quad_error_estimate;
    if (res.alternate_weight_value)
        j["alternate_weight_value"] = *res.alternate_weight_value;
    out << j.dump() << "\n";
    return 0;
}

int run_corpus(const std::string& mode, uint64_t seed, std::ostream& out)
{
    if (mode == "list") {
        for (const CorpusEntry& e : corpus()) {
            json j;
            j["name"] = e.name;
            if (e.analytic_eps)
                j["analytic_eps"] = *e.analytic_eps;
            j["notes"] = e.analytic_notes;
            j["expr"] = e.expr.print();
            out << j.dump() << "\n";
        }
        return 0;
    }
    if (mode == "run-acceptance") {
        std::vector<CriterionResult> results = run_acceptance(seed);
        print_results(results, out);
        return all_pass(results) ? 0 : 2;
    }
    throw std::invalid_argument("unknown corpus mode " + mode);
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"numerical toolkit for spherical and Schwarzian derivatives on the unit disc"};
    app.require_subcommand(1);

    std::string fn, zs = "0", from = "0", to = "0.9", eps_spec = "auto", out_path, range;
    double tol = 1e-10, delta = 1e-2, cutoff = 1.0 - 1e-4, ctol = 1e-9, eps_val = 0.1,
           lambda = 1.0;
    int n_points = 500, n_circle = 64;
    uint64_t seed = 0;
    bool parallel = false, alt_weight = false;
    GridSpec grid{0.95, 100, 64, false};

    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--rmax", grid.r_max, "outer grid radius in (0,1)");
        cmd->add_option("--nr", grid.n_radial, "radial grid count");
        cmd->add_option("--na", grid.n_angular, "angular grid count");
        cmd->add_flag("--refine", grid.boundary_refinement, "cluster radii toward rmax");
        cmd->add_flag("--parallel", parallel, "evaluate grid points in parallel");
    };

    CLI::App* eval = app.add_subcommand("eval", "f, f', f#, S_f at a point, as JSON");
    eval->add_option("--fn", fn, "function expression")->required();
    eval->add_option("--z", zs, "evaluation point, e.g. 0.5+0i")->required();

    CLI::App* factor = app.add_subcommand("factor", "integrate w'' + S_f/2 w = 0 and verify");
    factor->add_option("--fn", fn)->required();
    factor->add_option("--from", from, "base point (default 0)");
    factor->add_option("--to", to, "endpoint")->required();
    factor->add_option("--tol", tol, "integrator tolerance");
    factor->add_option("--eps", eps_spec, "'auto' or a positive infimum value");
    factor->add_option("--out", out_path, "CSV output path");
    factor->add_flag("--parallel", parallel);

    CLI::App* bounds = app.add_subcommand("bounds", "grid checks of the growth bounds");
    std::string bounds_mode;
    bounds->add_option("mode", bounds_mode, "theorem|schwarzpick|cauchy|subharmonic|rigidity")
        ->required();
    bounds->add_option("--fn", fn)->required();
    bounds->add_option("--eps", eps_spec);
    bounds->add_option("--to", to, "path endpoint (cauchy)");
    bounds->add_option("--points", n_points, "sample count (subharmonic)");
    bounds->add_option("--delta", delta, "circle radius (subharmonic)");
    bounds->add_option("--ncircle", n_circle, "circle sample count (subharmonic)");
    bounds->add_option("--seed", seed, "sample seed");
    bounds->add_option("--out", out_path, "CSV output path");
    add_grid(bounds);

    CLI::App* hille_cmd = app.add_subcommand("hille", "extremal family computations");
    std::string hille_mode;
    hille_cmd->add_option("mode", hille_mode, "eps0|lambdastar|closedforms")->required();
    hille_cmd->add_option("--eps", eps_val, "target infimum (lambdastar)");
    hille_cmd->add_option("--lambda", lambda, "family parameter (closedforms)");
    hille_cmd->add_option("--z", zs, "evaluation point (closedforms)");

    CLI::App* phi = app.add_subcommand("phi", "lower/upper envelope for Phi_eps(r)");
    phi->add_option("--eps", eps_val)->required();
    phi->add_option("--r", range, "radii as START:END:STEP")->required();
    phi->add_option("--out", out_path, "CSV output path");

    CLI::App* charac = app.add_subcommand("charac", "Ahlfors-Shimizu characteristic integral");
    charac->add_option("--fn", fn)->required();
    charac->add_option("--cutoff", cutoff, "rho cutoff in (0,1)");
    charac->add_option("--tol", ctol, "quadrature tolerance");
    charac->add_flag("--alt-weight", alt_weight, "also integrate with weight rho log(1/rho)");

    CLI::App* corpus_cmd = app.add_subcommand("corpus", "registry and acceptance runner");
    std::string corpus_mode;
    corpus_cmd->add_option("mode", corpus_mode, "list|run-acceptance")->required();
    corpus_cmd->add_option("--seed", seed, "acceptance sample seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (eval->parsed())
            return run_eval(fn, zs, out);
        if (factor->parsed())
            return run_factor(fn, from, to, tol, eps_spec, out_path, parallel, out);
        if (bounds->parsed())
            return run_bounds(bounds_mode, fn, eps_spec, grid, to, n_points, delta, n_circle,
                              seed, out_path, parallel, out);
        if (hille_cmd->parsed())
            return run_hille(hille_mode, eps_val, lambda, zs, out);
        if (phi->parsed())
            return run_phi(eps_val, range, out_path, out);
        if (charac->parsed())
            return run_charac(fn, cutoff, ctol, alt_weight, out);
        if (corpus_cmd->parsed())
            return run_corpus(corpus_mode, seed, out);
    } catch (const EpsTooLargeError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 1;
}

}  // namespace unidisc

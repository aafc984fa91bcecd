#include "unidisc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

namespace unidisc {

namespace {

/// refined-eps fallback grid used when a grid-estimated eps produces a
/// violation: denser and pushed to the boundary
GridSpec refined_eps_grid(const GridSpec& g)
{
    GridSpec r = g;
    r.r_max = std::max(g.r_max, 0.999);
    r.n_radial = 2 * g.n_radial;
    r.n_angular = 2 * g.n_angular;
    r.boundary_refinement = true;
    return r;
}

std::vector<BoundEntry> sweep_grid(const GridSpec& grid,
                                   const std::function<double(Complex)>& quantity,
                                   const std::function<double(double)>& bound_of_r, bool parallel)
{
    std::vector<double> rs = grid.radii();
    std::vector<double> ts = grid.angles();
    size_t na = ts.size();
    std::vector<double> q = map_indexed(
        rs.size() * na,
        [&](size_t idx) { return quantity(std::polar(rs[idx / na], ts[idx % na])); }, parallel);
    std::vector<BoundEntry> entries(q.size());
    for (size_t idx = 0; idx < q.size(); idx++) {
        double r = rs[idx / na];
        Complex z = std::polar(r, ts[idx % na]);
        entries[idx] = {z, q[idx], bound_of_r(r), 0.0};
    }
    return entries;
}

}  // namespace

const char* quantity_kind_name(QuantityKind k)
{
    switch (k) {
        case QuantityKind::SphericalEq3: return "spherical_vs_theorem";
        case QuantityKind::SchwarzianEq3: return "schwarzian_vs_theorem";
        case QuantityKind::SchwarzPick: return "spherical_vs_schwarz_pick";
        case QuantityKind::CauchyFirst: return "cauchy_first_derivative";
        case QuantityKind::CauchySecond: return "cauchy_second_derivative";
    }
    return "unknown";
}

BoundReport::BoundReport(QuantityKind kind, EpsilonEstimate eps, std::vector<BoundEntry> entries)
    : kind_(kind), eps_(eps), entries_(std::move(entries)), violations_(0),
      min_margin_(std::numeric_limits<double>::infinity())
{
    for (BoundEntry& e : entries_) {
        e.margin = e.bound - e.quantity;
        min_margin_ = std::min(min_margin_, e.margin);
        if (e.margin < -kViolationTol)
            violations_++;
    }
    if (entries_.empty())
        min_margin_ = 0.0;
}

void write_csv(const BoundReport& report, std::ostream& out)
{
    out << "z_re,z_im,quantity,bound,margin\n";
    for (const BoundEntry& e : report.entries())
        out << fmt17(e.z.real()) << ',' << fmt17(e.z.imag()) << ',' << fmt17(e.quantity) << ','
            << fmt17(e.bound) << ',' << fmt17(e.margin) << '\n';
}

std::string summary_json(const BoundReport& report)
{
    nlohmann::json j;
    j["kind"] = quantity_kind_name(report.quantity_kind());
    j["eps"] = report.eps_used().value;
    j["eps_is_analytic"] = report.eps_used().is_analytic;
    j["n_points"] = report.entries().size();
    j["violations"] = report.violations();
    j["min_margin"] = report.min_margin();
    return j.dump();
}

std::pair<BoundReport, BoundReport> check_theorem_bounds(const FunctionExpr& f,
                                                         const EpsilonEstimate& eps,
                                                         const GridSpec& grid, bool parallel)
{
    if (!(eps.value > 0.0))
        throw std::invalid_argument("check_theorem_bounds: eps must be positive");
    auto build = [&](const EpsilonEstimate& e) {
        BoundReport sph(QuantityKind::SphericalEq3, e,
                        sweep_grid(
                            grid, [&](Complex z) { return spherical_derivative(f, z); },
                            [&](double r) { return (2.0 / e.value) / ((1.0 - r) * (1.0 - r)); },
                            parallel));
        BoundReport schw(QuantityKind::SchwarzianEq3, e,
                         sweep_grid(
                             grid, [&](Complex z) { return std::abs(schwarzian(f, z)); },
                             [&](double r) {
                                 return (4.0 / e.value) / ((1.0 - r) * (1.0 - r) * (1.0 - r));
                             },
                             parallel));
        return std::make_pair(std::move(sph), std::move(schw));
    };
    auto reports = build(eps);
    if (!eps.is_analytic && (reports.first.violations() > 0 || reports.second.violations() > 0)) {
        // a grid eps overestimates the true infimum and can be spuriously
        // strict; re-estimate once on a refined grid
        EpsilonEstimate refined = inf_spherical(f, refined_eps_grid(eps.grid), parallel);
        reports = build(refined);
    }
    return reports;
}

BoundReport check_schwarz_pick(const FunctionExpr& f, const EpsilonEstimate& eps,
                               const GridSpec& grid, bool parallel)
{
    if (!(eps.value > 0.0))
        throw std::invalid_argument("check_schwarz_pick: eps must be positive");
    auto build = [&](const EpsilonEstimate& e) {
        return BoundReport(
            QuantityKind::SchwarzPick, e,
            sweep_grid(
                grid, [&](Complex z) { return spherical_derivative(f, z); },
                [&](double r) {
                    double s = 1.0 - r * r;
                    return (1.0 / e.value) / (s * s);
                },
                parallel));
    };
    BoundReport report = build(eps);
    if (!eps.is_analytic && report.violations() > 0)
        report = build(inf_spherical(f, refined_eps_grid(eps.grid), parallel));
    return report;
}

std::pair<BoundReport, BoundReport> check_cauchy_estimates(const PathSolution& sol,
                                                           const FunctionExpr& f,
                                                           const EpsilonEstimate& eps)
{
    if (!(eps.value > 0.0))
        throw std::invalid_argument("check_cauchy_estimates: eps must be positive");
    double inv_sqrt_eps = 1.0 / std::sqrt(eps.value);
    std::vector<BoundEntry> first, second;
    first.reserve(2 * sol.samples.size());
    second.reserve(2 * sol.samples.size());
    for (const PathSample& s : sol.samples) {
        double r = std::abs(s.z);
        double b1 = inv_sqrt_eps / (1.0 - r);
        double b2 = inv_sqrt_eps / ((1.0 - r) * (1.0 - r));
        Complex half_s = 0.5 * schwarzian(f, s.z);
        first.push_back({s.z, std::abs(s.w1p), b1, 0.0});
        first.push_back({s.z, std::abs(s.w2p), b1, 0.0});
        second.push_back({s.z, std::abs(half_s * s.w1), b2, 0.0});
        second.push_back({s.z, std::abs(half_s * s.w2), b2, 0.0});
    }
    return {BoundReport(QuantityKind::CauchyFirst, eps, std::move(first)),
            BoundReport(QuantityKind::CauchySecond, eps, std::move(second))};
}

SubharmonicResult subharmonic_check(const FunctionExpr& f, const std::vector<Complex>& points,
                                    double delta, int n_circle)
{
    if (!(delta > 0.0) || n_circle < 3)
        throw std::invalid_argument("subharmonic_check: need delta > 0 and n_circle >= 3");
    const double slack = 1e-9;
    SubharmonicResult result;
    for (Complex z : points) {
        double center = spherical_derivative(f, z);
        if (center <= 0.0) {
            result.skipped.push_back(z);
            continue;
        }
        double mean = 0.0;
        bool ok = true;
        for (int k = 0; k < n_circle && ok; k++) {
            double theta = 2.0 * M_PI * double(k) / double(n_circle);
            double v = spherical_derivative(f, z + std::polar(delta, theta));
            if (v <= 0.0)
                ok = false;
            else
                mean += -std::log(v);
        }
        if (!ok) {
            result.skipped.push_back(z);
            continue;
        }
        mean /= double(n_circle);
        result.n_checked++;
        if (-std::log(center) > mean + slack)
            result.violations.push_back(z);
    }
    return result;
}

RigidityProbe rigidity_probe(const FunctionExpr& f, const GridSpec& grid, bool parallel)
{
    if (grid.r_max < 0.99)
        throw std::invalid_argument("rigidity_probe: grid.r_max must be >= 0.99");
    RigidityProbe probe;
    probe.inf_est = inf_spherical(f, grid, parallel);

    // The grid minimum is biased upward by the uncovered shell r_max < |z| < 1
    // (a rotation already sits at 1/(1+r_max^2) > 1/2), so the no-function-
    // exceeds-one-half test extends the argmin ray toward the boundary before
    // comparing.
    double ray_min = probe.inf_est.value;
    double theta = std::arg(probe.inf_est.argmin);
    double gap = 1.0 - grid.r_max;
    for (int k = 1; k <= 24; k++) {
        double r = 1.0 - gap * std::pow(0.5, k);
        if (r >= 1.0 - 1e-9)
            break;
        try {
            ray_min = std::min(ray_min, spherical_derivative(f, std::polar(r, theta)));
        } catch (const std::exception&) {
            break;
        }
    }
    probe.exceeds_half = ray_min > 0.5 + 1e-6;
    if (probe.inf_est.value < 0.5 - 1e-3)
        return probe;

    // fit the rotation through f(0) and arg f'(0); if f has a pole at 0,
    // fit to -1/f instead and map the parameters back
    EvalResult at0 = f.eval(Complex(0.0));
    bool flipped = at0.at_pole;
    Jet3 j = flipped ? -(*at0.reciprocal_jet) : *at0.finite_jet;
    double phi = std::arg(j.d1);
    double t = 1.0 / std::sqrt(1.0 + std::norm(j.d0));
    Complex a_conj = std::polar(t, -phi / 2.0);
    Complex a = std::conj(a_conj);
    Complex b = j.d0 * a_conj;
    if (flipped) {
        // R = iota of S with iota(w) = -1/w: (a, b) -> (conj(b), -conj(a))
        Complex a2 = std::conj(b), b2 = -std::conj(a);
        a = a2;
        b = b2;
    }
    FunctionExpr rot = unitary_rotation(a, b);

    std::vector<double> rs = grid.radii();
    std::vector<double> ts = grid.angles();
    size_t na = ts.size();
    std::vector<double> dev = map_indexed(
        rs.size() * na,
        [&](size_t idx) {
            Complex z = std::polar(rs[idx / na], ts[idx % na]);
            EvalResult rf = f.eval(z);
            EvalResult rr = rot.eval(z);
            Complex f1 = rf.at_pole ? Complex(1.0) : rf.finite_jet->d0;
            Complex f2 = rf.at_pole ? rf.reciprocal_jet->d0 : Complex(1.0);
            Complex g1 = rr.at_pole ? Complex(1.0) : rr.finite_jet->d0;
            Complex g2 = rr.at_pole ? rr.reciprocal_jet->d0 : Complex(1.0);
            return chordal_projective(f1, f2, g1, g2);
        },
        parallel);
    double max_dev = 0.0;
    for (double d : dev)
        max_dev = std::max(max_dev, d);
    probe.rotation_match = RotationFit{a, b, max_dev};
    return probe;
}

}  // namespace unidisc

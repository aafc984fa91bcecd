#include "unidisc/diffgeo.hpp"

#include <cmath>

namespace unidisc {

namespace {

/// relative |f'| threshold below which a point counts as critical
const double kCriticalThreshold = 1e-30;

/// clustering ratio for boundary-refined radii
const double kRefineRatio = 0.85;

const Jet3& pick_jet(const EvalResult& res)
{
    return res.finite_jet ? *res.finite_jet : *res.reciprocal_jet;
}

// golden-section minimization on [a, b]
double golden_min(const std::function<double(double)>& fn, double a, double b, int iters,
                  double& xmin)
{
    const double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c), fd = fn(d);
    for (int i = 0; i < iters; i++) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
    }
    if (fc < fd) {
        xmin = c;
        return fc;
    }
    xmin = d;
    return fd;
}

}  // namespace

void GridSpec::validate() const
{
    if (!(r_max > 0.0) || !(r_max < 1.0))
        throw std::invalid_argument("GridSpec: r_max must lie in (0, 1)");
    if (n_radial < 1 || n_angular < 1)
        throw std::invalid_argument("GridSpec: n_radial and n_angular must be >= 1");
}

std::vector<double> GridSpec::radii() const
{
    validate();
    std::vector<double> r(n_radial);
    if (!boundary_refinement) {
        for (int i = 1; i <= n_radial; i++)
            r[i - 1] = r_max * double(i) / double(n_radial);
        return r;
    }
    // spacing shrinks by kRefineRatio per step so the last radii hug r_max
    double denom = 1.0 - std::pow(kRefineRatio, n_radial);
    for (int i = 1; i <= n_radial; i++)
        r[i - 1] = r_max * (1.0 - std::pow(kRefineRatio, i)) / denom;
    return r;
}

std::vector<double> GridSpec::angles() const
{
    validate();
    std::vector<double> t(n_angular);
    for (int j = 0; j < n_angular; j++)
        t[j] = 2.0 * M_PI * double(j) / double(n_angular);
    return t;
}

EpsilonEstimate EpsilonEstimate::analytic(double value, Complex argmin_hint)
{
    EpsilonEstimate e;
    e.value = value;
    e.argmin = argmin_hint;
    e.is_analytic = true;
    return e;
}

CriticalPointError::CriticalPointError(Complex point)
    : std::runtime_error("critical point: |f'| underflows at z = (" +
                         std::to_string(point.real()) + ", " + std::to_string(point.imag()) + ")"),
      point_(point)
{
}

double spherical_derivative(const FunctionExpr& f, Complex z)
{
    EvalResult res = f.eval(z);
    const Jet3& j = pick_jet(res);
    return std::abs(j.d1) / (1.0 + std::norm(j.d0));
}

Complex schwarzian(const FunctionExpr& f, Complex z)
{
    EvalResult res = f.eval(z);
    const Jet3& j = pick_jet(res);
    if (std::abs(j.d1) < kCriticalThreshold * (1.0 + std::norm(j.d0)))
        throw CriticalPointError(z);
    Complex ratio = j.d2 / j.d1;
    return j.d3 / j.d1 - 1.5 * ratio * ratio;
}

EpsilonEstimate inf_spherical(const FunctionExpr& f, const GridSpec& grid, bool parallel)
{
    std::vector<double> rs = grid.radii();
    std::vector<double> ts = grid.angles();
    size_t na = ts.size();

    std::vector<double> values = map_indexed(
        rs.size() * na,
        [&](size_t idx) {
            double r = rs[idx / na], t = ts[idx % na];
            return spherical_derivative(f, std::polar(r, t));
        },
        parallel);

    // radial-major scan; strict < keeps the lexicographically first argmin
    size_t best = 0;
    for (size_t idx = 1; idx < values.size(); idx++)
        if (values[idx] < values[best])
            best = idx;

    size_t ri = best / na, ti = best % na;
    double r_best = rs[ri], t_best = ts[ti];
    double v_best = values[best];

    // one refinement pass: golden-section descent in r, then in theta
    double r_lo = ri > 0 ? rs[ri - 1] : 0.0;
    double r_hi = ri + 1 < rs.size() ? rs[ri + 1] : grid.r_max;
    double r_ref = r_best;
    double v_r = golden_min([&](double r) { return spherical_derivative(f, std::polar(r, t_best)); },
                            r_lo, r_hi, 20, r_ref);
    if (v_r < v_best) {
        v_best = v_r;
        r_best = r_ref;
    }
    double t_step = na > 1 ? (ts[1] - ts[0]) : 2.0 * M_PI;
    double t_ref = t_best;
    double v_t = golden_min([&](double t) { return spherical_derivative(f, std::polar(r_best, t)); },
                            t_best - t_step, t_best + t_step, 20, t_ref);
    if (v_t < v_best) {
        v_best = v_t;
        t_best = t_ref;
    }

    EpsilonEstimate e;
    e.value = v_best;
    e.argmin = std::polar(r_best, t_best);
    e.grid = grid;
    e.is_analytic = false;
    return e;
}

}  // namespace unidisc

#include "unidisc/hille.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "unidisc/common.hpp"

namespace unidisc {

double hille_spherical_closed(double lambda, Complex z)
{
    // (1+z)/(1-z) maps the disc onto the right half-plane, so the principal
    // argument stays in (-pi/2, pi/2) and |f| = exp(-lambda arg(.)) never
    // hits a branch cut
    Complex ratio = (1.0 + z) / (1.0 - z);
    double mod_f = std::exp(-lambda * std::arg(ratio));
    return lambda / std::abs(1.0 - z * z) * 2.0 / (mod_f + 1.0 / mod_f);
}

Complex hille_schwarzian_closed(double lambda, Complex z)
{
    Complex s = 1.0 - z * z;
    return 2.0 * (1.0 + lambda * lambda) / (s * s);
}

double family_infimum(double lambda)
{
    return lambda / (2.0 * std::cosh(M_PI * lambda / 2.0));
}

Epsilon0 epsilon0()
{
    // tanh t - 1/t is negative at 1 and positive at 2
    double lo = 1.0, hi = 2.0;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        (std::tanh(mid) - 1.0 / mid < 0.0 ? lo : hi) = mid;
    }
    Epsilon0 e;
    e.t0 = 0.5 * (lo + hi);
    e.lambda0 = 2.0 * e.t0 / M_PI;
    e.eps0 = e.lambda0 / std::cosh(e.t0);
    return e;
}

EpsTooLargeError::EpsTooLargeError(double eps, double family_max)
    : std::runtime_error("eps = " + std::to_string(eps) + " exceeds the family maximum " +
                         std::to_string(family_max)),
      family_max_(family_max)
{
}

double lambda_star(double eps, const std::function<double(double)>& family_inf)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("lambda_star: eps must be positive");

    // locate the unimodal maximum of family_inf by golden section
    const double inv_phi = 0.6180339887498949;
    double a = 1e-6, b = 20.0;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = family_inf(c), fd = family_inf(d);
    for (int i = 0; i < 200; i++) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = family_inf(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = family_inf(d);
        }
    }
    double lambda_max = 0.5 * (a + b);
    double family_max = family_inf(lambda_max);
    // the golden-section apex is flat to ~sqrt(machine eps) in lambda, so
    // accept eps values that exceed the located maximum by roundoff only
    if (eps > family_max * (1.0 + 1e-9))
        throw EpsTooLargeError(eps, family_max);
    if (eps >= family_max)
        return lambda_max;

    // largest admissible lambda lies on the decreasing branch
    double hi = lambda_max;
    while (family_inf(hi) >= eps) {
        hi *= 2.0;
        if (hi > 1e6)
            throw std::runtime_error("lambda_star: bracketing failed");
    }
    double lo = lambda_max;
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        (family_inf(mid) >= eps ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

PhiCurve phi_lower_curve(double eps, std::span<const double> r_values)
{
    for (size_t i = 0; i < r_values.size(); i++) {
        if (!(r_values[i] > 0.0) || !(r_values[i] < 1.0))
            throw std::invalid_argument("phi_lower_curve: r values must lie in (0, 1)");
        if (i > 0 && !(r_values[i] > r_values[i - 1]))
            throw std::invalid_argument("phi_lower_curve: r values must increase strictly");
    }
    PhiCurve curve;
    curve.eps = eps;
    curve.lambda_star = lambda_star(eps);
    curve.eps0 = epsilon0().eps0;
    curve.rows.reserve(r_values.size());
    for (double r : r_values) {
        double lower = curve.lambda_star / (1.0 - r * r);
        double upper = 2.0 / (eps * (1.0 - r) * (1.0 - r));
        curve.rows.push_back({r, lower, upper});
    }
    return curve;
}

void write_csv(const PhiCurve& curve, std::ostream& out)
{
    nlohmann::json header;
    header["eps"] = curve.eps;
    header["lambda_star"] = curve.lambda_star;
    header["eps0"] = curve.eps0;
    out << "# " << header.dump() << "\n";
    out << "r,lower,upper\n";
    for (const PhiRow& row : curve.rows)
        out << fmt17(row.r) << ',' << fmt17(row.lower) << ',' << fmt17(row.upper) << '\n';
}

}  // namespace unidisc

#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "unidisc/merofn.hpp"

namespace unidisc {

/// spherical derivative of ((1+z)/(1-z))^{i lambda} in closed form:
///   lambda/|1 - z^2| * 2/(|f| + 1/|f|),  |f| = exp(-lambda arg((1+z)/(1-z)))
double hille_spherical_closed(double lambda, Complex z);

/// Schwarzian derivative in closed form: 2(1 + lambda^2)/(1 - z^2)^2.
/// This is the analytic expression; it agrees with the jet evaluation
/// everywhere, and with the real-axis restriction 2(1+lambda^2)(1-x^2)^{-2}.
Complex hille_schwarzian_closed(double lambda, Complex z);

/// infimum over the disc of the spherical derivative of the family member:
///   lambda / (2 cosh(pi lambda / 2)),
/// attained in the limit z -> +-i.  This is the relation confirmed by the
/// dense-grid measurement (see the family-infimum tests).
double family_infimum(double lambda);

/// stationary point of lambda |-> lambda / cosh(pi lambda / 2):
/// t0 solves tanh t = 1/t on [1, 2] (bisection to 1e-12), lambda0 = 2 t0/pi,
/// eps0 = lambda0 / cosh(t0) ~ 0.4219.  The same lambda0 maximizes
/// family_infimum; the measured family maximum is eps0/2.
struct Epsilon0 {
    double t0;
    double lambda0;
    double eps0;
};

Epsilon0 epsilon0();

class EpsTooLargeError : public std::runtime_error {
public:
    EpsTooLargeError(double eps, double family_max);
    double family_max() const { return family_max_; }

private:
    double family_max_;
};

/// largest lambda with family_inf(lambda) >= eps (bracketing + bisection to
/// 1e-10); throws EpsTooLargeError when eps exceeds the family maximum
double lambda_star(double eps, const std::function<double(double)>& family_inf = family_infimum);

/// lower/upper envelope for the sup of the spherical derivative on |z| <= r
/// over the family with infimum >= eps
struct PhiRow {
    double r;
    double lower;  ///< lambda*(eps)/(1 - r^2), the on-family real-axis maximum
    double upper;  ///< 2/(eps (1-r)^2), the general bound
};

struct PhiCurve {
    double eps;
    double lambda_star;
    double eps0;  ///< stationary value of the printed maximization, for the header
    std::vector<PhiRow> rows;
};

PhiCurve phi_lower_curve(double eps, std::span<const double> r_values);

/// CSV with a JSON header line: # {"eps":..,"lambda_star":..,"eps0":..}
void write_csv(const PhiCurve& curve, std::ostream& out);

}  // namespace unidisc

#pragma once

#include <optional>

#include "unidisc/merofn.hpp"

namespace unidisc {

struct CharacteristicResult {
    double value = 0.0;          ///< (1/pi) int_0^cutoff (1-rho) int_0^2pi f#^2 dtheta drho
    double rho_cutoff = 0.0;
    double quad_error_estimate = 0.0;
    /// same integral with the weight rho*log(1/rho) instead of (1-rho); the
    /// two weights agree to first order as rho -> 1 and are finite together
    std::optional<double> alternate_weight_value;
};

/// Limit Nevanlinna characteristic via the area integral of the squared
/// spherical derivative: trapezoid in theta (doubled until the change drops
/// below tol), adaptive Gauss-Legendre panels in rho, Kahan-compensated
/// summation in ascending rho order.
CharacteristicResult ahlfors_shimizu(const FunctionExpr& f, double rho_cutoff = 1.0 - 1e-4,
                                     double tol = 1e-9, bool alternate_weight = false);

}  // namespace unidisc

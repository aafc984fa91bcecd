#pragma once

#include <functional>

#include "unidisc/merofn.hpp"

namespace unidisc {

/// Test-support oracles, kept independent of the jet evaluation path: a plain
/// complex-arithmetic tree evaluator, high-order difference quotients, a
/// seeded random-expression generator and a brute-force grid minimum.

/// evaluate the tree with plain std::complex arithmetic (no jets); throws
/// JetError on division by zero / log of zero / non-finite results
Complex oracle_value(const FunctionExpr& f, Complex z);

/// 4th-order central difference quotient of g along a complex direction
/// (|dir| = 1); for holomorphic g this estimates g'(z) for any direction
Complex central_diff4(const std::function<Complex(Complex)>& g, Complex z, Complex dir, double h);

/// random expression over the node algebra: depth-limited, modest constants
FunctionExpr random_expression(SplitMix64& rng, int max_depth);

/// plain dense-grid minimum of the spherical derivative over r in (0, r_max],
/// uniform radii and angles, no refinement; independent of inf_spherical
double dense_min_spherical(const FunctionExpr& f, double r_max, int n_radial, int n_angular);

}  // namespace unidisc

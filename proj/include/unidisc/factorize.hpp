#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "unidisc/diffgeo.hpp"

namespace unidisc {

/// One accepted integration step: the two solutions of w'' + (1/2) S_f w = 0
/// and their derivatives at z.
struct PathSample {
    Complex z;
    Complex w1, w1p;
    Complex w2, w2p;
};

/// Sampled trajectory of the normalized fundamental pair along a straight
/// segment.  The diagnostics are recomputed from the samples after
/// integration, never taken from the integrator's own bookkeeping.
struct PathSolution {
    std::vector<PathSample> samples;
    double tol = 0.0;
    Complex base_point{};
    double wronskian_drift = 0.0;      ///< max |w1 w2' - w1' w2 - 1|
    double reconstruction_error = 0.0; ///< max chordal distance between w1/w2 and f
};

/// Identity checks on a PathSolution against its function and an epsilon
/// estimate.
struct FactorizationReport {
    double norm_identity_error = 0.0;       ///< max |f^# (|w1|^2 + |w2|^2) - 1|
    double schwarzian_identity_error = 0.0; ///< max rel. error in w1' w2'' - w1'' w2' = S_f / 2
    bool eps_bound_check = false;           ///< |w1|^2 + |w2|^2 <= 1/eps on all samples
};

struct InitialConditions {
    Complex w1, w1p, w2, w2p;
};

class PoleAtBaseError : public std::runtime_error {
public:
    explicit PoleAtBaseError(Complex z);
};

class StepSizeUnderflowError : public std::runtime_error {
public:
    explicit StepSizeUnderflowError(Complex z);
    Complex where() const { return where_; }

private:
    Complex where_;
};

/// Normalization fixing the pair up to sign:
///   w2 = sqrt(-1/f'(z0)) (principal branch), w2' = -(f''/(2f')) w2,
///   w1 = f w2,            w1' = f' w2 + f w2',
/// which gives w1 w2' - w1' w2 = 1 exactly.  Throws CriticalPointError when
/// f'(z0) = 0 and PoleAtBaseError when f(z0) = infinity (rotate the sphere
/// first: replace f by R of f with a unitary rotation R).
InitialConditions initial_conditions(const FunctionExpr& f, Complex z0);

/// Adaptive Dormand-Prince 5(4) integration of both solutions of
/// w'' + (1/2) S_f(z) w = 0 as one first-order system along the straight
/// segment from z0 to z1, local error per step <= tol.  Both solutions share
/// one step sequence, so the Wronskian is conserved to integrator order.
PathSolution integrate_path(const FunctionExpr& f, Complex z0, Complex z1, double tol = 1e-10);

/// recompute every identity from the samples
FactorizationReport verify_factorization(const PathSolution& sol, const FunctionExpr& f,
                                         const EpsilonEstimate& eps);

/// CSV: z_re,z_im,w1_re,w1_im,w1p_re,w1p_im,w2_re,w2_im,w2p_re,w2p_im,wronskian_abs_err
void write_csv(const PathSolution& sol, std::ostream& out);

}  // namespace unidisc

#pragma once

#include <stdexcept>
#include <vector>

#include "unidisc/merofn.hpp"

namespace unidisc {

/// Polar evaluation grid on the closed disc |z| <= r_max.  With
/// boundary_refinement the radii cluster geometrically toward r_max, where the
/// spherical derivative of the interesting families attains its infimum.
struct GridSpec {
    double r_max = 0.95;
    int n_radial = 100;
    int n_angular = 64;
    bool boundary_refinement = false;

    void validate() const;
    std::vector<double> radii() const;
    std::vector<double> angles() const;
};

/// Grid estimate of inf over the disc of the spherical derivative.  The grid
/// minimum is an upper bound for the true infimum; closed-form values injected
/// by callers carry is_analytic = true.
struct EpsilonEstimate {
    double value = 0.0;
    Complex argmin{};
    GridSpec grid{};
    bool is_analytic = false;

    static EpsilonEstimate analytic(double value, Complex argmin_hint);
};

/// evaluation hit a point where |f'| underflows relative to 1 + |f|^2,
/// i.e. the hypothesis inf f^# > 0 fails there
class CriticalPointError : public std::runtime_error {
public:
    explicit CriticalPointError(Complex point);
    Complex point() const { return point_; }

private:
    Complex point_;
};

/// f^# = |f'| / (1 + |f|^2); at poles computed from the jet of 1/f, which
/// extends f^# continuously (the chordal metric is rotation invariant)
double spherical_derivative(const FunctionExpr& f, Complex z);

/// S_f = f'''/f' - (3/2)(f''/f')^2 from one order-3 jet; at poles of f the
/// jet of 1/f is used (the Schwarzian is invariant under post-composition
/// with Mobius maps).  Throws CriticalPointError when f'(z) underflows.
Complex schwarzian(const FunctionExpr& f, Complex z);

/// grid minimum of f^# with one golden-section refinement pass (20 iterations
/// in r, then 20 in theta, around the grid argmin)
EpsilonEstimate inf_spherical(const FunctionExpr& f, const GridSpec& grid, bool parallel = false);

}  // namespace unidisc

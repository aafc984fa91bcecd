#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "unidisc/factorize.hpp"

namespace unidisc {

enum class QuantityKind { SphericalEq3, SchwarzianEq3, SchwarzPick, CauchyFirst, CauchySecond };

const char* quantity_kind_name(QuantityKind k);

struct BoundEntry {
    Complex z;
    double quantity;
    double bound;
    double margin;  ///< bound - quantity, recomputed on construction
};

/// Grid of pointwise quantity-vs-bound comparisons.  violations counts
/// entries with margin < -1e-9.
class BoundReport {
public:
    static constexpr double kViolationTol = 1e-9;

    BoundReport(QuantityKind kind, EpsilonEstimate eps, std::vector<BoundEntry> entries);

    QuantityKind quantity_kind() const { return kind_; }
    const EpsilonEstimate& eps_used() const { return eps_; }
    const std::vector<BoundEntry>& entries() const { return entries_; }
    int violations() const { return violations_; }
    double min_margin() const { return min_margin_; }

private:
    QuantityKind kind_;
    EpsilonEstimate eps_;
    std::vector<BoundEntry> entries_;
    int violations_;
    double min_margin_;
};

/// CSV: z_re,z_im,quantity,bound,margin
void write_csv(const BoundReport& report, std::ostream& out);

/// compact JSON: {kind, eps, eps_is_analytic, n_points, violations, min_margin}
std::string summary_json(const BoundReport& report);

/// f^#(z) vs (2/eps)/(1-|z|)^2 and |S_f(z)| vs (4/eps)/(1-|z|)^3 over the
/// grid.  When eps is a grid estimate and a report shows violations, eps is
/// re-estimated once on a refined grid before the reports are final.
std::pair<BoundReport, BoundReport> check_theorem_bounds(const FunctionExpr& f,
                                                         const EpsilonEstimate& eps,
                                                         const GridSpec& grid,
                                                         bool parallel = false);

/// f^#(z) vs (1/eps)/(1-|z|^2)^2
BoundReport check_schwarz_pick(const FunctionExpr& f, const EpsilonEstimate& eps,
                               const GridSpec& grid, bool parallel = false);

/// |w'| vs (1/sqrt(eps))/(1-|z|) and |w''| vs (1/sqrt(eps))/(1-|z|)^2 on the
/// samples of a base-point-0 path, both solutions, w'' = -(1/2) S_f w
std::pair<BoundReport, BoundReport> check_cauchy_estimates(const PathSolution& sol,
                                                           const FunctionExpr& f,
                                                           const EpsilonEstimate& eps);

/// circle-mean check of the sub-mean-value inequality for -log f^#
struct SubharmonicResult {
    std::vector<Complex> violations;  ///< centers where the inequality fails
    std::vector<Complex> skipped;     ///< centers skipped: a sample hit a critical point
    int n_checked = 0;
};

SubharmonicResult subharmonic_check(const FunctionExpr& f, const std::vector<Complex>& points,
                                    double delta, int n_circle);

/// unit-modulus rotation parameters fitted through f(0) and arg f'(0)
struct RotationFit {
    Complex a, b;
    double max_dev;  ///< max chordal deviation from f over the grid
};

struct RigidityProbe {
    EpsilonEstimate inf_est;
    bool exceeds_half = false;
    std::optional<RotationFit> rotation_match;
};

/// estimates inf f^# on a grid with r_max >= 0.99; flags inf > 1/2 + 1e-6
/// (never expected for any meromorphic f) and, when the infimum comes within
/// 1e-3 of 1/2, fits the rotation through f(0), arg f'(0)
RigidityProbe rigidity_probe(const FunctionExpr& f, const GridSpec& grid, bool parallel = false);

}  // namespace unidisc

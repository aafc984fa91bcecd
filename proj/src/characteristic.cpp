#include "unidisc/characteristic.hpp"

#include <cmath>
#include <stdexcept>

#include "unidisc/diffgeo.hpp"

namespace unidisc {

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1]
const double kGlNode[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                           -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                           0.7966664774136267,  0.9602898564975363};
const double kGlWeight[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                             0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                             0.2223810344533745, 0.1012285362903763};

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double x)
    {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

/// integral over one ring of the squared spherical derivative, by doubling
/// the periodic trapezoid rule until the change drops below inner_tol
double ring_integral(const FunctionExpr& f, double rho, double inner_tol, double& last_delta)
{
    int n = 16;
    double partial = 0.0;
    for (int k = 0; k < n; k++) {
        double s = spherical_derivative(f, std::polar(rho, 2.0 * M_PI * k / n));
        partial += s * s;
    }
    double integral = 2.0 * M_PI * partial / n;
    last_delta = std::fabs(integral);
    for (int iter = 0; iter < 14; iter++) {
        // midpoints of the current spacing
        double extra = 0.0;
        for (int k = 0; k < n; k++) {
            double s = spherical_derivative(f, std::polar(rho, M_PI * (2.0 * k + 1.0) / n));
            extra += s * s;
        }
        partial += extra;
        n *= 2;
        double refined = 2.0 * M_PI * partial / n;
        last_delta = std::fabs(refined - integral);
        integral = refined;
        if (last_delta <= inner_tol * std::max(1.0, std::fabs(integral)))
            break;
    }
    return integral;
}

struct RhoIntegrand {
    double paper;      // (1-rho) * ring / pi
    double alternate;  // rho*log(1/rho) * ring / pi
};

}  // namespace

CharacteristicResult ahlfors_shimizu(const FunctionExpr& f, double rho_cutoff, double tol,
                                     bool alternate_weight)
{
    if (!(rho_cutoff > 0.0) || !(rho_cutoff < 1.0))
        throw std::invalid_argument("ahlfors_shimizu: rho_cutoff must lie in (0, 1)");
    if (!(tol > 0.0))
        throw std::invalid_argument("ahlfors_shimizu: tol must be positive");

    double inner_tol = 0.05 * tol;
    double max_inner_delta = 0.0;

    auto integrand = [&](double rho) -> RhoIntegrand {
        double delta = 0.0;
        double ring = ring_integral(f, rho, inner_tol, delta);
        max_inner_delta = std::max(max_inner_delta, delta);
        RhoIntegrand v;
        v.paper = (1.0 - rho) * ring / M_PI;
        v.alternate = alternate_weight && rho > 0.0 ? rho * std::log(1.0 / rho) * ring / M_PI : 0.0;
        return v;
    };

    auto gl8 = [&](double a, double b) -> RhoIntegrand {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        RhoIntegrand acc{0.0, 0.0};
        for (int i = 0; i < 8; i++) {
            RhoIntegrand v = integrand(mid + half * kGlNode[i]);
            acc.paper += kGlWeight[i] * v.paper;
            acc.alternate += kGlWeight[i] * v.alternate;
        }
        acc.paper *= half;
        acc.alternate *= half;
        return acc;
    };

    // adaptive bisection, left panel first so accepted panels come in
    // ascending rho order
    Kahan total, total_alt;
    double err_estimate = 0.0;
    struct Frame {
        double a, b;
        RhoIntegrand whole;
        int depth;
    };
    std::vector<Frame> stack;
    stack.push_back({0.0, rho_cutoff, gl8(0.0, rho_cutoff), 0});
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        double mid = 0.5 * (fr.a + fr.b);
        RhoIntegrand left = gl8(fr.a, mid);
        RhoIntegrand right = gl8(mid, fr.b);
        double diff = std::fabs(left.paper + right.paper - fr.whole.paper);
        if (alternate_weight)
            diff = std::max(diff, std::fabs(left.alternate + right.alternate - fr.whole.alternate));
        double local_tol = 0.5 * tol * (fr.b - fr.a) / rho_cutoff;
        if (diff <= std::max(local_tol, 1e-300) || fr.depth >= 28) {
            total.add(left.paper);
            total.add(right.paper);
            total_alt.add(left.alternate);
            total_alt.add(right.alternate);
            err_estimate += diff;
        } else {
            // push right first so the left half is processed next
            stack.push_back({mid, fr.b, right, fr.depth + 1});
            stack.push_back({fr.a, mid, left, fr.depth + 1});
        }
    }

    CharacteristicResult result;
    result.value = total.sum;
    result.rho_cutoff = rho_cutoff;
    result.quad_error_estimate = err_estimate + max_inner_delta;
    if (alternate_weight)
        result.alternate_weight_value = total_alt.sum;
    return result;
}

}  // namespace unidisc

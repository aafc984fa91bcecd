#include "unidisc/factorize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

namespace unidisc {

namespace {

const int kMaxSteps = 1000000;
const double kMinStep = 1e-14;  // in units of the [0,1] path parameter

using State = std::array<Complex, 4>;  // w1, w1', w2, w2'

State axpy(const State& y, double h, const State& k)
{
    State r;
    for (int i = 0; i < 4; i++)
        r[i] = y[i] + h * k[i];
    return r;
}

std::string complex_str(Complex z)
{
    return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

double wronskian_error(const PathSample& s)
{
    return std::abs(s.w1 * s.w2p - s.w1p * s.w2 - 1.0);
}

}  // namespace

PoleAtBaseError::PoleAtBaseError(Complex z)
    : std::runtime_error("f has a pole at the base point z0 = " + complex_str(z) +
                         "; post-compose with a unitary rotation first")
{
}

StepSizeUnderflowError::StepSizeUnderflowError(Complex z)
    : std::runtime_error("step size underflow near z = " + complex_str(z) +
                         "; the path runs too close to a critical point or pole of S_f"),
      where_(z)
{
}

InitialConditions initial_conditions(const FunctionExpr& f, Complex z0)
{
    EvalResult res = f.eval(z0);
    if (res.at_pole)
        throw PoleAtBaseError(z0);
    const Jet3& j = *res.finite_jet;
    if (std::abs(j.d1) < 1e-30 * (1.0 + std::norm(j.d0)))
        throw CriticalPointError(z0);
    InitialConditions ic;
    ic.w2 = std::sqrt(-1.0 / j.d1);
    ic.w2p = -(j.d2 / (2.0 * j.d1)) * ic.w2;
    ic.w1 = j.d0 * ic.w2;
    ic.w1p = j.d1 * ic.w2 + j.d0 * ic.w2p;
    return ic;
}

PathSolution integrate_path(const FunctionExpr& f, Complex z0, Complex z1, double tol)
{
    if (!(tol > 0.0))
        throw std::invalid_argument("integrate_path: tol must be positive");

    // Dormand-Prince 5(4) tableau
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                        e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const Complex delta = z1 - z0;
    // first-order system in the path parameter t, z = z0 + t*delta; the state
    // keeps w' = dw/dz, so every component picks up one factor of delta:
    //   d/dt (w, w') = (w' delta, -S_f(z)/2 * w * delta)
    auto rhs = [&](double t, const State& y) -> State {
        Complex z = z0 + t * delta;
        Complex half_s = 0.5 * schwarzian(f, z);
        return {y[1] * delta, -half_s * y[0] * delta,
                y[3] * delta, -half_s * y[2] * delta};
    };

    InitialConditions ic = initial_conditions(f, z0);
    State y = {ic.w1, ic.w1p, ic.w2, ic.w2p};

    PathSolution sol;
    sol.tol = tol;
    sol.base_point = z0;
    sol.samples.push_back({z0, y[0], y[1], y[2], y[3]});

    if (delta == Complex(0.0))
        return sol;

    double t = 0.0;
    double h = 1e-3;
    State k1 = rhs(t, y);
    int accepted = 0;
    while (t < 1.0) {
        if (accepted > kMaxSteps || h < kMinStep)
            throw StepSizeUnderflowError(z0 + t * delta);
        bool last = false;
        if (t + h >= 1.0) {
            h = 1.0 - t;
            last = true;
        }

        State k2 = rhs(t + c2 * h, axpy(y, h * a21, k1));
        State k3 = rhs(t + c3 * h, [&] {
            State s = y;
            for (int i = 0; i < 4; i++)
                s[i] += h * (a31 * k1[i] + a32 * k2[i]);
            return s;
        }());
        State k4 = rhs(t + c4 * h, [&] {
            State s = y;
            for (int i = 0; i < 4; i++)
                s[i] += h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            return s;
        }());
        State k5 = rhs(t + c5 * h, [&] {
            State s = y;
            for (int i = 0; i < 4; i++)
                s[i] += h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            return s;
        }());
        State k6 = rhs(t + h, [&] {
            State s = y;
            for (int i = 0; i < 4; i++)
                s[i] += h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            return s;
        }());
        State ynew = y;
        for (int i = 0; i < 4; i++)
            ynew[i] += h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        State k7 = rhs(t + h, ynew);

        double err = 0.0;
        for (int i = 0; i < 4; i++) {
            double e = std::abs(h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                     e6 * k6[i] + e7 * k7[i]));
            double scale = tol * (1.0 + std::max(std::abs(y[i]), std::abs(ynew[i])));
            err = std::max(err, e / scale);
        }

        if (err <= 1.0) {
            accepted++;
            t = last ? 1.0 : t + h;
            y = ynew;
            k1 = k7;  // first-same-as-last
            sol.samples.push_back({z0 + t * delta, y[0], y[1], y[2], y[3]});
        }
        double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }

    // diagnostics from the samples only
    double drift = 0.0, recon = 0.0;
    for (const PathSample& s : sol.samples) {
        drift = std::max(drift, wronskian_error(s));
        EvalResult res = f.eval(s.z);
        double dist;
        if (res.at_pole)
            dist = chordal_projective(s.w1, s.w2, 1.0, res.reciprocal_jet->d0);
        else
            dist = chordal_projective(s.w1, s.w2, res.finite_jet->d0, 1.0);
        recon = std::max(recon, dist);
    }
    sol.wronskian_drift = drift;
    sol.reconstruction_error = recon;
    return sol;
}

FactorizationReport verify_factorization(const PathSolution& sol, const FunctionExpr& f,
                                         const EpsilonEstimate& eps)
{
    FactorizationReport rep;
    rep.eps_bound_check = eps.value > 0.0;
    for (const PathSample& s : sol.samples) {
        double norm_sum = std::norm(s.w1) + std::norm(s.w2);
        double fs = spherical_derivative(f, s.z);
        rep.norm_identity_error = std::max(rep.norm_identity_error, std::fabs(fs * norm_sum - 1.0));

        // second derivatives reconstructed from the ODE; the residual in
        // w1' w2'' - w1'' w2' = S_f/2 then measures Wronskian drift, i.e. the
        // integrator, not the algebra
        Complex half_s = 0.5 * schwarzian(f, s.z);
        Complex w1pp = -half_s * s.w1;
        Complex w2pp = -half_s * s.w2;
        Complex lhs = s.w1p * w2pp - w1pp * s.w2p;
        double denom = std::max(std::abs(half_s), 1e-300);
        double rel = std::abs(lhs - half_s) / denom;
        if (lhs == half_s)
            rel = 0.0;
        rep.schwarzian_identity_error = std::max(rep.schwarzian_identity_error, rel);

        if (eps.value > 0.0 && norm_sum * eps.value > 1.0 + 1e-8)
            rep.eps_bound_check = false;
    }
    return rep;
}

void write_csv(const PathSolution& sol, std::ostream& out)
{
    out << "z_re,z_im,w1_re,w1_im,w1p_re,w1p_im,w2_re,w2_im,w2p_re,w2p_im,wronskian_abs_err\n";
    for (const PathSample& s : sol.samples) {
        out << fmt17(s.z.real()) << ',' << fmt17(s.z.imag()) << ',' << fmt17(s.w1.real()) << ','
            << fmt17(s.w1.imag()) << ',' << fmt17(s.w1p.real()) << ',' << fmt17(s.w1p.imag())
            << ',' << fmt17(s.w2.real()) << ',' << fmt17(s.w2.imag()) << ',' << fmt17(s.w2p.real())
            << ',' << fmt17(s.w2p.imag()) << ',' << fmt17(wronskian_error(s)) << '\n';
    }
}

}  // namespace unidisc

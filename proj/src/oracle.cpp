#include "unidisc/oracle.hpp"

#include <cmath>

#include "unidisc/diffgeo.hpp"

namespace unidisc {

namespace {

Complex oracle_node(const ExprNode& n, Complex z)
{
    auto finite = [](Complex v) {
        if (!is_finite(v))
            throw JetError(JetErrorKind::NonFinite);
        return v;
    };
    switch (n.kind) {
        case NodeKind::Const: return n.value;
        case NodeKind::Var: return z;
        case NodeKind::Add: return finite(oracle_node(*n.lhs, z) + oracle_node(*n.rhs, z));
        case NodeKind::Sub: return finite(oracle_node(*n.lhs, z) - oracle_node(*n.rhs, z));
        case NodeKind::Mul: return finite(oracle_node(*n.lhs, z) * oracle_node(*n.rhs, z));
        case NodeKind::Div: {
            Complex b = oracle_node(*n.rhs, z);
            if (b == Complex(0.0))
                throw JetError(JetErrorKind::DivisionByZero, z);
            return finite(oracle_node(*n.lhs, z) / b);
        }
        case NodeKind::Pow: {
            Complex b = oracle_node(*n.lhs, z);
            if (b == Complex(0.0) && n.value.real() <= 0.0)
                throw JetError(JetErrorKind::LogOfZero, z);
            return finite(std::pow(b, n.value));
        }
        case NodeKind::Exp: return finite(std::exp(oracle_node(*n.lhs, z)));
        case NodeKind::Log: {
            Complex a = oracle_node(*n.lhs, z);
            if (a == Complex(0.0))
                throw JetError(JetErrorKind::LogOfZero, z);
            return finite(std::log(a));
        }
    }
    throw std::logic_error("unreachable node kind");
}

}  // namespace

Complex oracle_value(const FunctionExpr& f, Complex z)
{
    return oracle_node(*f.root(), z);
}

Complex central_diff4(const std::function<Complex(Complex)>& g, Complex z, Complex dir, double h)
{
    Complex step = h * dir;
    Complex num = 8.0 * (g(z + step) - g(z - step)) - (g(z + 2.0 * step) - g(z - 2.0 * step));
    return num / (12.0 * step);
}

FunctionExpr random_expression(SplitMix64& rng, int max_depth)
{
    if (max_depth <= 0) {
        // leaf: variable twice as likely as a constant
        if (rng.next() % 3 != 0)
            return FunctionExpr::variable();
        return FunctionExpr::constant(Complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)));
    }
    switch (rng.next() % 8) {
        case 0: return random_expression(rng, 0);
        case 1: return random_expression(rng, max_depth - 1) + random_expression(rng, max_depth - 1);
        case 2: return random_expression(rng, max_depth - 1) - random_expression(rng, max_depth - 1);
        case 3: return random_expression(rng, max_depth - 1) * random_expression(rng, max_depth - 1);
        case 4: {
            // keep denominators away from the origin
            FunctionExpr denom = random_expression(rng, max_depth - 1) +
                                 FunctionExpr::constant(Complex(rng.uniform(1.5, 3.0), 0.0));
            return random_expression(rng, max_depth - 1) / denom;
        }
        case 5: return exp(FunctionExpr::constant(rng.uniform(-1.0, 1.0)) * random_expression(rng, max_depth - 1));
        case 6: {
            // shift the argument into the right half-plane before log
            FunctionExpr arg = random_expression(rng, max_depth - 1) +
                               FunctionExpr::constant(Complex(rng.uniform(2.0, 4.0), 0.0));
            return log(arg);
        }
        default: {
            long n = long(rng.next() % 5) - 2;  // integer exponent in [-2, 2]
            if (n == 0)
                n = 2;
            FunctionExpr base = random_expression(rng, max_depth - 1) +
                                FunctionExpr::constant(Complex(rng.uniform(1.5, 3.0), 0.0));
            return pow(base, Complex(double(n), 0.0));
        }
    }
}

double dense_min_spherical(const FunctionExpr& f, double r_max, int n_radial, int n_angular)
{
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= n_radial; i++) {
        double r = r_max * double(i) / double(n_radial);
        for (int j = 0; j < n_angular; j++) {
            double t = 2.0 * M_PI * double(j) / double(n_angular);
            best = std::min(best, spherical_derivative(f, std::polar(r, t)));
        }
    }
    return best;
}

}  // namespace unidisc

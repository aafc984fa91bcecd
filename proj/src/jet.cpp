#include "unidisc/jet.hpp"

#include <cmath>

namespace unidisc {

namespace {

const char* kind_name(JetErrorKind k)
{
    switch (k) {
        case JetErrorKind::DivisionByZero: return "division by zero";
        case JetErrorKind::LogOfZero: return "log of zero";
        case JetErrorKind::NonFinite: return "non-finite value";
    }
    return "jet error";
}

std::string describe(JetErrorKind k, const std::optional<Complex>& loc)
{
    std::string msg = kind_name(k);
    if (loc) {
        msg += " at z = (" + std::to_string(loc->real()) + ", " + std::to_string(loc->imag()) + ")";
    }
    return msg;
}

Jet3 checked(Jet3 j)
{
    if (!j.all_finite())
        throw JetError(JetErrorKind::NonFinite);
    return j;
}

bool is_small_integer(Complex c, long& n)
{
    if (c.imag() != 0.0)
        return false;
    double r = c.real();
    if (r != std::nearbyint(r) || std::fabs(r) > 64.0)
        return false;
    n = long(r);
    return true;
}

// nonnegative integer power by repeated multiplication
Jet3 jet_ipow(Jet3 base, unsigned long n)
{
    Jet3 acc = Jet3::constant(1.0);
    while (n > 0) {
        if (n & 1ul)
            acc = acc * base;
        n >>= 1;
        if (n > 0)
            base = base * base;
    }
    return acc;
}

}  // namespace

JetError::JetError(JetErrorKind kind, std::optional<Complex> location)
    : std::runtime_error(describe(kind, location)), kind_(kind), location_(location)
{
}

Jet3 operator+(const Jet3& a, const Jet3& b)
{
    return checked({a.d0 + b.d0, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3});
}

Jet3 operator-(const Jet3& a, const Jet3& b)
{
    return checked({a.d0 - b.d0, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3});
}

Jet3 operator-(const Jet3& a)
{
    return {-a.d0, -a.d1, -a.d2, -a.d3};
}

Jet3 operator*(const Jet3& a, const Jet3& b)
{
    // Leibniz rule up to order 3; the terms are grouped symmetrically in
    // (a, b) so that swapping the operands gives bitwise-identical results
    return checked({a.d0 * b.d0,
                    a.d1 * b.d0 + a.d0 * b.d1,
                    (a.d2 * b.d0 + a.d0 * b.d2) + 2.0 * (a.d1 * b.d1),
                    (a.d3 * b.d0 + a.d0 * b.d3) + 3.0 * (a.d2 * b.d1 + a.d1 * b.d2)});
}

Jet3 operator/(const Jet3& a, const Jet3& b)
{
    if (b.d0 == Complex(0.0))
        throw JetError(JetErrorKind::DivisionByZero);
    // solve a = q*b order by order
    Jet3 q;
    q.d0 = a.d0 / b.d0;
    q.d1 = (a.d1 - q.d0 * b.d1) / b.d0;
    q.d2 = (a.d2 - 2.0 * q.d1 * b.d1 - q.d0 * b.d2) / b.d0;
    q.d3 = (a.d3 - 3.0 * q.d2 * b.d1 - 3.0 * q.d1 * b.d2 - q.d0 * b.d3) / b.d0;
    return checked(q);
}

Jet3 jet_exp(const Jet3& a)
{
    Complex e = std::exp(a.d0);
    return checked({e,
                    a.d1 * e,
                    (a.d2 + a.d1 * a.d1) * e,
                    (a.d3 + 3.0 * a.d1 * a.d2 + a.d1 * a.d1 * a.d1) * e});
}

Jet3 jet_log(const Jet3& a)
{
    if (a.d0 == Complex(0.0))
        throw JetError(JetErrorKind::LogOfZero);
    Complex u1 = a.d1 / a.d0;
    Complex u2 = a.d2 / a.d0;
    Complex u3 = a.d3 / a.d0;
    return checked({std::log(a.d0),
                    u1,
                    u2 - u1 * u1,
                    u3 - 3.0 * u1 * u2 + 2.0 * u1 * u1 * u1});
}

Jet3 jet_pow(const Jet3& a, Complex c)
{
    long n = 0;
    if (is_small_integer(c, n)) {
        if (n >= 0)
            return jet_ipow(a, (unsigned long)n);
        return Jet3::constant(1.0) / jet_ipow(a, (unsigned long)(-n));
    }
    if (a.d0 == Complex(0.0))
        throw JetError(JetErrorKind::LogOfZero);
    return jet_exp(Jet3::constant(c) * jet_log(a));
}

}  // namespace unidisc

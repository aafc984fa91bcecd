#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "unidisc/common.hpp"

namespace unidisc {

/// Order-3 truncated power-series carrier: a function value together with its
/// first three complex derivatives at the expansion point.  All arithmetic is
/// exact derivative propagation (Leibniz / quotient / chain rules), so jets of
/// expression trees carry the derivatives needed for the spherical and
/// Schwarzian derivative without any finite differencing.
struct Jet3 {
    Complex d0{};  ///< f
    Complex d1{};  ///< f'
    Complex d2{};  ///< f''
    Complex d3{};  ///< f'''

    static Jet3 constant(Complex c) { return {c, 0.0, 0.0, 0.0}; }
    static Jet3 variable(Complex z0) { return {z0, 1.0, 0.0, 0.0}; }

    bool all_finite() const
    {
        return is_finite(d0) && is_finite(d1) && is_finite(d2) && is_finite(d3);
    }

    bool operator==(const Jet3&) const = default;
};

enum class JetErrorKind { DivisionByZero, LogOfZero, NonFinite };

/// evaluation failure; carries the offending point when the caller knows it
class JetError : public std::runtime_error {
public:
    explicit JetError(JetErrorKind kind, std::optional<Complex> location = {});

    JetErrorKind kind() const { return kind_; }
    std::optional<Complex> location() const { return location_; }

    /// copy of err with the location filled in (jet arithmetic itself does not
    /// know the evaluation point; the expression evaluator attaches it)
    static JetError at(const JetError& err, Complex z) { return JetError(err.kind_, z); }

private:
    JetErrorKind kind_;
    std::optional<Complex> location_;
};

Jet3 operator+(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a, const Jet3& b);
Jet3 operator*(const Jet3& a, const Jet3& b);
Jet3 operator/(const Jet3& a, const Jet3& b);  // throws DivisionByZero when b.d0 == 0
Jet3 operator-(const Jet3& a);

/// exp composed with the jet
Jet3 jet_exp(const Jet3& a);
/// principal-branch log; throws LogOfZero when a.d0 == 0
Jet3 jet_log(const Jet3& a);
/// principal power a^c.  Integer exponents of small modulus are evaluated by
/// repeated multiplication (valid at a.d0 == 0, where exp(c log a) is not);
/// all other exponents go through exp(c log a).
Jet3 jet_pow(const Jet3& a, Complex c);

}  // namespace unidisc

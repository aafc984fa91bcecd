#pragma once

#include <memory>
#include <optional>
#include <string>

#include "unidisc/jet.hpp"

namespace unidisc {

enum class NodeKind { Const, Var, Add, Sub, Mul, Div, Pow, Exp, Log };

struct ExprNode {
    NodeKind kind;
    Complex value{};  ///< Const payload, or the exponent of a Pow node
    std::shared_ptr<const ExprNode> lhs, rhs;
};

/// Result of pole-aware evaluation.  Exactly one of the two shapes occurs:
/// at_pole == false with finite_jet set (reciprocal_jet additionally set when
/// f(z) != 0), or at_pole == true with reciprocal_jet set and value 0.
struct EvalResult {
    std::optional<Jet3> finite_jet;
    std::optional<Jet3> reciprocal_jet;
    bool at_pole = false;
};

/// Immutable expression tree for a function meromorphic on the unit disc.
/// Trees are shared, freely copyable and safe to evaluate concurrently.
class FunctionExpr {
public:
    FunctionExpr() = default;

    static FunctionExpr constant(Complex c);
    static FunctionExpr variable();

    bool valid() const { return node_ != nullptr; }
    const std::shared_ptr<const ExprNode>& root() const { return node_; }

    /// jet of f at z; throws JetError (with location) on any failure,
    /// including division by zero at a pole of f
    Jet3 eval_jet(Complex z) const;

    /// pole-aware evaluation: on division-by-zero, retries on the structural
    /// reciprocal tree and flags a pole when 1/f evaluates to 0 there
    EvalResult eval(Complex z) const;

    /// structural reciprocal: Div flips, Mul/Pow/Exp/Const distribute, anything
    /// else becomes 1/t.  Keeps 1/f evaluable at simple poles of f.
    FunctionExpr reciprocal() const;

    /// this∘g: replace every occurrence of the variable by g
    FunctionExpr substitute(const FunctionExpr& g) const;

    /// canonical mini-language text; parse_function(print()) rebuilds the
    /// identical tree
    std::string print() const;

    bool operator==(const FunctionExpr& other) const;

    friend FunctionExpr operator+(const FunctionExpr& a, const FunctionExpr& b);
    friend FunctionExpr operator-(const FunctionExpr& a, const FunctionExpr& b);
    friend FunctionExpr operator*(const FunctionExpr& a, const FunctionExpr& b);
    friend FunctionExpr operator/(const FunctionExpr& a, const FunctionExpr& b);
    friend FunctionExpr exp(const FunctionExpr& a);
    friend FunctionExpr log(const FunctionExpr& a);
    friend FunctionExpr pow(const FunctionExpr& a, Complex c);
    friend FunctionExpr mobius_compose(Complex a, Complex b, Complex c, Complex d,
                                       const FunctionExpr& f);

private:
    explicit FunctionExpr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const ExprNode> node_;
};

inline FunctionExpr operator+(Complex a, const FunctionExpr& b) { return FunctionExpr::constant(a) + b; }
inline FunctionExpr operator-(Complex a, const FunctionExpr& b) { return FunctionExpr::constant(a) - b; }
inline FunctionExpr operator*(Complex a, const FunctionExpr& b) { return FunctionExpr::constant(a) * b; }
inline FunctionExpr operator/(const FunctionExpr& a, Complex b) { return a / FunctionExpr::constant(b); }

/// (az + b)/(cz + d); rejects ad - bc == 0
FunctionExpr mobius(Complex a, Complex b, Complex c, Complex d);

/// rigid rotation of the Riemann sphere (az + b)/(-conj(b) z + conj(a));
/// requires |a|^2 + |b|^2 = 1 to 1e-12
FunctionExpr unitary_rotation(Complex a, Complex b);

/// ((1+z)/(1-z))^{i lambda} as exp(i lambda log((1+z)/(1-z))), principal log;
/// holomorphic and zero-free on the disc
FunctionExpr hille(double lambda);

/// The post-composition (a f + b)/(c f + d).  When f is a quotient P/Q the
/// result is formed as (a P + b Q)/(c P + d Q), which stays evaluable at the
/// poles of f; otherwise plain substitution into the Mobius tree.
FunctionExpr mobius_compose(Complex a, Complex b, Complex c, Complex d, const FunctionExpr& f);

/// rigid sphere rotation applied to values: mobius_compose with the unitary
/// coefficients (a, b, -conj(b), conj(a))
FunctionExpr rotate_sphere(Complex a, Complex b, const FunctionExpr& f);

}  // namespace unidisc

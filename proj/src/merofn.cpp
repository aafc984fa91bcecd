#include "unidisc/merofn.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace unidisc {

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_node(NodeKind kind, Complex value = {}, NodePtr lhs = nullptr, NodePtr rhs = nullptr)
{
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->value = value;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

Jet3 eval_node(const ExprNode& n, Complex z)
{
    switch (n.kind) {
        case NodeKind::Const: return Jet3::constant(n.value);
        case NodeKind::Var: return Jet3::variable(z);
        case NodeKind::Add: return eval_node(*n.lhs, z) + eval_node(*n.rhs, z);
        case NodeKind::Sub: return eval_node(*n.lhs, z) - eval_node(*n.rhs, z);
        case NodeKind::Mul: return eval_node(*n.lhs, z) * eval_node(*n.rhs, z);
        case NodeKind::Div: return eval_node(*n.lhs, z) / eval_node(*n.rhs, z);
        case NodeKind::Pow: return jet_pow(eval_node(*n.lhs, z), n.value);
        case NodeKind::Exp: return jet_exp(eval_node(*n.lhs, z));
        case NodeKind::Log: return jet_log(eval_node(*n.lhs, z));
    }
    throw std::logic_error("unreachable node kind");
}

NodePtr reciprocal_node(const NodePtr& n)
{
    switch (n->kind) {
        case NodeKind::Div:
            return make_node(NodeKind::Div, {}, n->rhs, n->lhs);
        case NodeKind::Mul:
            return make_node(NodeKind::Mul, {}, reciprocal_node(n->lhs), reciprocal_node(n->rhs));
        case NodeKind::Pow:
            return make_node(NodeKind::Pow, -n->value, n->lhs);
        case NodeKind::Exp:
            return make_node(NodeKind::Exp, {},
                             make_node(NodeKind::Mul, {}, make_node(NodeKind::Const, Complex(-1.0)), n->lhs));
        case NodeKind::Const:
            if (n->value != Complex(0.0))
                return make_node(NodeKind::Const, 1.0 / n->value);
            break;
        default:
            break;
    }
    return make_node(NodeKind::Div, {}, make_node(NodeKind::Const, Complex(1.0)), n);
}

NodePtr substitute_node(const NodePtr& n, const NodePtr& repl)
{
    switch (n->kind) {
        case NodeKind::Var: return repl;
        case NodeKind::Const: return n;
        default: break;
    }
    NodePtr l = n->lhs ? substitute_node(n->lhs, repl) : nullptr;
    NodePtr r = n->rhs ? substitute_node(n->rhs, repl) : nullptr;
    if (l == n->lhs && r == n->rhs)
        return n;
    return make_node(n->kind, n->value, std::move(l), std::move(r));
}

bool equal_nodes(const ExprNode& a, const ExprNode& b)
{
    if (a.kind != b.kind || a.value != b.value)
        return false;
    if ((a.lhs == nullptr) != (b.lhs == nullptr) || (a.rhs == nullptr) != (b.rhs == nullptr))
        return false;
    if (a.lhs && !equal_nodes(*a.lhs, *b.lhs))
        return false;
    if (a.rhs && !equal_nodes(*a.rhs, *b.rhs))
        return false;
    return true;
}

// ------------------------------------------------------------------ printing

// shortest round-trip decimal for a double
std::string fmt_double(double x)
{
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// complex literal: "2", "-0.5", "i", "-i", "2i", or parenthesized "(a+bi)"
std::string fmt_complex(Complex c)
{
    if (c.imag() == 0.0)
        return fmt_double(c.real());
    std::string im;
    if (c.imag() == 1.0)
        im = "i";
    else if (c.imag() == -1.0)
        im = "-i";
    else
        im = fmt_double(c.imag()) + "i";
    if (c.real() == 0.0)
        return im;
    std::string re = fmt_double(c.real());
    if (c.imag() > 0.0 || im[0] == '-')
        return "(" + re + (c.imag() > 0.0 ? "+" : "") + im + ")";
    return "(" + re + im + ")";
}

int precedence(NodeKind k)
{
    switch (k) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div: return 2;
        case NodeKind::Pow: return 3;
        default: return 4;
    }
}

void print_node(const ExprNode& n, std::string& out)
{
    auto child = [&out](const ExprNode& c, bool parens) {
        if (parens)
            out += '(';
        print_node(c, out);
        if (parens)
            out += ')';
    };
    int prec = precedence(n.kind);
    switch (n.kind) {
        case NodeKind::Const:
            out += fmt_complex(n.value);
            return;
        case NodeKind::Var:
            out += 'z';
            return;
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Mul:
        case NodeKind::Div:
            // left-associative grammar: the right child is parenthesized on a
            // precedence tie so that parse(print(t)) rebuilds t exactly
            child(*n.lhs, precedence(n.lhs->kind) < prec);
            out += (n.kind == NodeKind::Add) ? '+' : (n.kind == NodeKind::Sub) ? '-'
                 : (n.kind == NodeKind::Mul) ? '*' : '/';
            child(*n.rhs, precedence(n.rhs->kind) <= prec);
            return;
        case NodeKind::Pow: {
            child(*n.lhs, precedence(n.lhs->kind) < 4);
            out += '^';
            Complex c = n.value;
            bool simple = (c.imag() == 0.0) || (c.real() == 0.0);
            out += simple ? (c.imag() == 0.0 ? fmt_double(c.real()) : fmt_complex(c)) : fmt_complex(c);
            return;
        }
        case NodeKind::Exp:
            out += "exp(";
            print_node(*n.lhs, out);
            out += ')';
            return;
        case NodeKind::Log:
            out += "log(";
            print_node(*n.lhs, out);
            out += ')';
            return;
    }
}

}  // namespace

FunctionExpr FunctionExpr::constant(Complex c)
{
    return FunctionExpr(make_node(NodeKind::Const, c));
}

FunctionExpr FunctionExpr::variable()
{
    return FunctionExpr(make_node(NodeKind::Var));
}

Jet3 FunctionExpr::eval_jet(Complex z) const
{
    if (!node_)
        throw std::logic_error("empty FunctionExpr");
    try {
        return eval_node(*node_, z);
    } catch (const JetError& e) {
        throw JetError::at(e, z);
    }
}

EvalResult FunctionExpr::eval(Complex z) const
{
    try {
        Jet3 j = eval_jet(z);
        EvalResult res;
        res.finite_jet = j;
        if (j.d0 != Complex(0.0))
            res.reciprocal_jet = Jet3::constant(1.0) / j;
        return res;
    } catch (const JetError& primary) {
        if (primary.kind() != JetErrorKind::DivisionByZero)
            throw;
        // a zero denominator: decide between a genuine pole of f and a
        // defective expression by evaluating the reciprocal tree
        Jet3 rj = reciprocal().eval_jet(z);
        if (rj.d0 != Complex(0.0))
            throw;
        EvalResult res;
        res.reciprocal_jet = rj;
        res.at_pole = true;
        return res;
    }
}

FunctionExpr FunctionExpr::reciprocal() const
{
    return FunctionExpr(reciprocal_node(node_));
}

FunctionExpr FunctionExpr::substitute(const FunctionExpr& g) const
{
    return FunctionExpr(substitute_node(node_, g.node_));
}

std::string FunctionExpr::print() const
{
    std::string out;
    print_node(*node_, out);
    return out;
}

bool FunctionExpr::operator==(const FunctionExpr& other) const
{
    if (node_ == other.node_)
        return true;
    if (!node_ || !other.node_)
        return false;
    return equal_nodes(*node_, *other.node_);
}

FunctionExpr operator+(const FunctionExpr& a, const FunctionExpr& b)
{
    return FunctionExpr(make_node(NodeKind::Add, {}, a.node_, b.node_));
}

FunctionExpr operator-(const FunctionExpr& a, const FunctionExpr& b)
{
    return FunctionExpr(make_node(NodeKind::Sub, {}, a.node_, b.node_));
}

FunctionExpr operator*(const FunctionExpr& a, const FunctionExpr& b)
{
    return FunctionExpr(make_node(NodeKind::Mul, {}, a.node_, b.node_));
}

FunctionExpr operator/(const FunctionExpr& a, const FunctionExpr& b)
{
    return FunctionExpr(make_node(NodeKind::Div, {}, a.node_, b.node_));
}

FunctionExpr exp(const FunctionExpr& a)
{
    return FunctionExpr(make_node(NodeKind::Exp, {}, a.node_));
}

FunctionExpr log(const FunctionExpr& a)
{
    return FunctionExpr(make_node(NodeKind::Log, {}, a.node_));
}

FunctionExpr pow(const FunctionExpr& a, Complex c)
{
    return FunctionExpr(make_node(NodeKind::Pow, c, a.node_));
}

FunctionExpr mobius(Complex a, Complex b, Complex c, Complex d)
{
    if (a * d - b * c == Complex(0.0))
        throw std::invalid_argument("mobius: degenerate coefficients (ad - bc = 0)");
    FunctionExpr z = FunctionExpr::variable();
    return (a * z + FunctionExpr::constant(b)) / (c * z + FunctionExpr::constant(d));
}

FunctionExpr unitary_rotation(Complex a, Complex b)
{
    if (std::fabs(std::norm(a) + std::norm(b) - 1.0) > 1e-12)
        throw std::invalid_argument("unitary_rotation: |a|^2 + |b|^2 must equal 1");
    return mobius(a, b, -std::conj(b), std::conj(a));
}

FunctionExpr hille(double lambda)
{
    if (!(lambda > 0.0))
        throw std::invalid_argument("hille: lambda must be positive");
    FunctionExpr z = FunctionExpr::variable();
    FunctionExpr ratio = (Complex(1.0) + z) / (Complex(1.0) - z);
    return exp(Complex(0.0, lambda) * log(ratio));
}

FunctionExpr mobius_compose(Complex a, Complex b, Complex c, Complex d, const FunctionExpr& f)
{
    if (a * d - b * c == Complex(0.0))
        throw std::invalid_argument("mobius_compose: degenerate coefficients (ad - bc = 0)");
    if (f.root()->kind == NodeKind::Div) {
        FunctionExpr p(f.root()->lhs), q(f.root()->rhs);
        return (a * p + b * q) / (c * p + d * q);
    }
    return mobius(a, b, c, d).substitute(f);
}

FunctionExpr rotate_sphere(Complex a, Complex b, const FunctionExpr& f)
{
    if (std::fabs(std::norm(a) + std::norm(b) - 1.0) > 1e-12)
        throw std::invalid_argument("rotate_sphere: |a|^2 + |b|^2 must equal 1");
    return mobius_compose(a, b, -std::conj(b), std::conj(a), f);
}

}  // namespace unidisc

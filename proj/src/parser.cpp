#include "unidisc/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <vector>

namespace unidisc {

ParseError::ParseError(const std::string& message, size_t position)
    : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
      position_(position)
{
}

namespace {

enum class Tok { Num, Imag, Z, Exp, Log, Hille, Mobius, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, At, End };

struct Token {
    Tok kind;
    double number = 0.0;  // payload of Num / Imag
    size_t pos = 0;
};

std::vector<Token> lex(std::string_view text)
{
    std::vector<Token> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace((unsigned char)c)) {
            i++;
            continue;
        }
        size_t pos = i;
        auto push = [&](Tok k) {
            out.push_back({k, 0.0, pos});
            i++;
        };
        if (std::isdigit((unsigned char)c) || c == '.') {
            const char* begin = text.data() + i;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin)
                throw ParseError("malformed number", pos);
            i += size_t(end - begin);
            if (i < text.size() && text[i] == 'i') {
                i++;
                out.push_back({Tok::Imag, v, pos});
            } else {
                out.push_back({Tok::Num, v, pos});
            }
            continue;
        }
        if (std::isalpha((unsigned char)c)) {
            size_t j = i;
            while (j < text.size() && std::isalpha((unsigned char)text[j]))
                j++;
            std::string_view word = text.substr(i, j - i);
            if (word == "z")
                out.push_back({Tok::Z, 0.0, pos});
            else if (word == "i")
                out.push_back({Tok::Imag, 1.0, pos});
            else if (word == "exp")
                out.push_back({Tok::Exp, 0.0, pos});
            else if (word == "log")
                out.push_back({Tok::Log, 0.0, pos});
            else if (word == "hille")
                out.push_back({Tok::Hille, 0.0, pos});
            else if (word == "mobius")
                out.push_back({Tok::Mobius, 0.0, pos});
            else
                throw ParseError("unknown name '" + std::string(word) + "'", pos);
            i = j;
            continue;
        }
        switch (c) {
            case '+': push(Tok::Plus); break;
            case '-': push(Tok::Minus); break;
            case '*': push(Tok::Star); break;
            case '/': push(Tok::Slash); break;
            case '^': push(Tok::Caret); break;
            case '(': push(Tok::LParen); break;
            case ')': push(Tok::RParen); break;
            case ',': push(Tok::Comma); break;
            case '@': push(Tok::At); break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", pos);
        }
    }
    out.push_back({Tok::End, 0.0, text.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : tokens(lex(text)) {}

    FunctionExpr parse_input()
    {
        DepthGuard guard(*this);
        FunctionExpr f = parse_expr();
        while (peek().kind == Tok::At) {
            advance();
            FunctionExpr g = parse_expr();
            f = f.substitute(g);
        }
        return f;
    }

    void expect_end()
    {
        if (peek().kind != Tok::End)
            throw ParseError("trailing input", peek().pos);
    }

    Complex parse_bare_complex()
    {
        Complex c = parse_complex_literal();
        expect_end();
        return c;
    }

private:
    std::vector<Token> tokens;
    size_t index = 0;
    int depth = 0;

    struct DepthGuard {
        Parser& parser;
        explicit DepthGuard(Parser& p) : parser(p)
        {
            if (++parser.depth > 256)
                throw ParseError("expression nested too deeply", parser.peek().pos);
        }
        ~DepthGuard() { parser.depth--; }
    };

    const Token& peek() const { return tokens[index]; }
    const Token& advance() { return tokens[index++]; }

    void expect(Tok k, const char* what)
    {
        if (peek().kind != k)
            throw ParseError(std::string("expected ") + what, peek().pos);
        advance();
    }

    FunctionExpr parse_expr()
    {
        FunctionExpr f = parse_term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool add = advance().kind == Tok::Plus;
            FunctionExpr g = parse_term();
            f = add ? f + g : f - g;
        }
        return f;
    }

    FunctionExpr parse_term()
    {
        FunctionExpr f = parse_factor();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            bool mul = advance().kind == Tok::Star;
            FunctionExpr g = parse_factor();
            f = mul ? f * g : f / g;
        }
        return f;
    }

    FunctionExpr parse_factor()
    {
        if (peek().kind == Tok::Minus) {
            advance();
            FunctionExpr f = parse_factor();
            // fold the sign into constants so that "-2" is one literal
            if (f.root()->kind == NodeKind::Const)
                return FunctionExpr::constant(-f.root()->value);
            return Complex(-1.0) * f;
        }
        FunctionExpr f = parse_atom();
        if (peek().kind == Tok::Caret) {
            advance();
            Complex c = parse_exponent();
            f = pow(f, c);
        }
        return f;
    }

    Complex parse_exponent()
    {
        if (peek().kind == Tok::LParen) {
            advance();
            Complex c = parse_complex_literal();
            expect(Tok::RParen, "')'");
            return c;
        }
        double sign = 1.0;
        if (peek().kind == Tok::Minus) {
            advance();
            sign = -1.0;
        }
        const Token& t = peek();
        if (t.kind == Tok::Num) {
            advance();
            return Complex(sign * t.number, 0.0);
        }
        if (t.kind == Tok::Imag) {
            advance();
            return Complex(0.0, sign * t.number);
        }
        throw ParseError("expected exponent", t.pos);
    }

    // [sign](Num|Imag) [('+'|'-')(Num|Imag)], at most one real and one
    // imaginary part
    Complex parse_complex_literal()
    {
        double re = 0.0, im = 0.0;
        bool have_re = false, have_im = false;
        auto take_part = [&](double sign) {
            const Token& t = peek();
            if (t.kind == Tok::Num) {
                if (have_re)
                    throw ParseError("duplicate real part in complex literal", t.pos);
                re = sign * t.number;
                have_re = true;
            } else if (t.kind == Tok::Imag) {
                if (have_im)
                    throw ParseError("duplicate imaginary part in complex literal", t.pos);
                im = sign * t.number;
                have_im = true;
            } else {
                throw ParseError("expected complex literal", t.pos);
            }
            advance();
        };
        double lead = 1.0;
        if (peek().kind == Tok::Minus) {
            advance();
            lead = -1.0;
        }
        take_part(lead);
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            double sign = peek().kind == Tok::Plus ? 1.0 : -1.0;
            advance();
            take_part(sign);
        }
        return Complex(re, im);
    }

    // '(' complexliteral ')' as a single Const atom; backtracks on mismatch
    bool try_paren_literal(Complex& out)
    {
        size_t save = index;
        try {
            expect(Tok::LParen, "'('");
            Complex c = parse_complex_literal();
            expect(Tok::RParen, "')'");
            out = c;
            return true;
        } catch (const ParseError&) {
            index = save;
            return false;
        }
    }

    FunctionExpr parse_atom()
    {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Z:
                advance();
                return FunctionExpr::variable();
            case Tok::Num:
                advance();
                return FunctionExpr::constant(Complex(t.number, 0.0));
            case Tok::Imag:
                advance();
                return FunctionExpr::constant(Complex(0.0, t.number));
            case Tok::Exp:
            case Tok::Log: {
                bool is_exp = t.kind == Tok::Exp;
                advance();
                expect(Tok::LParen, "'('");
                FunctionExpr arg = parse_input();
                expect(Tok::RParen, "')'");
                return is_exp ? exp(arg) : log(arg);
            }
            case Tok::Hille: {
                advance();
                expect(Tok::LParen, "'('");
                const Token& num = peek();
                if (num.kind != Tok::Num)
                    throw ParseError("hille() expects a positive real", num.pos);
                advance();
                expect(Tok::RParen, "')'");
                return hille(num.number);
            }
            case Tok::Mobius: {
                advance();
                expect(Tok::LParen, "'('");
                Complex a = parse_complex_literal();
                expect(Tok::Comma, "','");
                Complex b = parse_complex_literal();
                expect(Tok::Comma, "','");
                Complex c = parse_complex_literal();
                expect(Tok::Comma, "','");
                Complex d = parse_complex_literal();
                expect(Tok::RParen, "')'");
                return mobius(a, b, c, d);
            }
            case Tok::LParen: {
                Complex lit;
                if (try_paren_literal(lit))
                    return FunctionExpr::constant(lit);
                advance();
                FunctionExpr inner = parse_input();
                expect(Tok::RParen, "')'");
                return inner;
            }
            default:
                throw ParseError("expected an atom", t.pos);
        }
    }
};

}  // namespace

FunctionExpr parse_function(std::string_view text)
{
    Parser p(text);
    FunctionExpr f = p.parse_input();
    p.expect_end();
    return f;
}

Complex parse_complex(std::string_view text)
{
    Parser p(text);
    return p.parse_bare_complex();
}

}  // namespace unidisc

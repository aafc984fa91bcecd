#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "unidisc/merofn.hpp"

namespace unidisc {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, size_t position);
    size_t position() const { return position_; }

private:
    size_t position_;
};

/// Parse the function mini-language:
///   input  := expr ('@' expr)*            composition f @ g by substitution
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | atom ('^' complex)?
///   atom   := 'z' | complex | 'exp(' input ')' | 'log(' input ')'
///           | 'hille(' real ')' | 'mobius(' c ',' c ',' c ',' c ')'
///           | '(' input ')'
/// Complex literals: 2, -0.5, i, -2i, 1.5+0.5i, (1.5+0.5i).
FunctionExpr parse_function(std::string_view text);

/// parse a bare complex literal such as "0.5+0i" (used for CLI flags)
Complex parse_complex(std::string_view text);

}  // namespace unidisc

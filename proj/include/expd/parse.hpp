#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "expd/polynomial.hpp"

namespace expd {

// Syntax error with the byte offset where parsing failed.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Grammar (whitespace insignificant):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := coeff ('*' factor)* | factor ('*' factor)*
//   factor := ident ('^' uint)?
//   coeff  := int | int '/' uint
// Identifiers match [A-Za-z][A-Za-z0-9_]* and must appear in vars.
Polynomial parse_poly(const std::string& text, const std::vector<std::string>& vars);

} // namespace expd

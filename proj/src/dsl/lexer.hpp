#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sclat::dsl::detail {

enum class Tok { number, imaginary, ident, op, lparen, rparen, comma, end };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text;
    double value = 0.0;
    char op = 0;
};

/// Split `src` into tokens; throws ParseError on an unexpected character.
std::vector<Token> tokenize(std::string_view src);

/// The full source line containing byte `offset` (for diagnostics).
std::string line_at(std::string_view src, std::size_t offset);

} // namespace sclat::dsl::detail

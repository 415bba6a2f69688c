#include "lexer.hpp"

#include "sclat/errors.hpp"

#include <cctype>
#include <charconv>

namespace sclat::dsl::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

} // namespace

std::string line_at(std::string_view src, std::size_t offset) {
    offset = std::min(offset, src.size());
    std::size_t begin = 0;
    if (offset > 0) {
        const std::size_t nl = src.rfind('\n', offset - 1);
        if (nl != std::string_view::npos) begin = nl + 1;
    }
    std::size_t end = src.find('\n', offset);
    if (end == std::string_view::npos) end = src.size();
    return std::string(src.substr(begin, end - begin));
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (digit(c) || (c == '.' && i + 1 < src.size() && digit(src[i + 1]))) {
            while (i < src.size() && digit(src[i])) ++i;
            if (i < src.size() && src[i] == '.') {
                ++i;
                while (i < src.size() && digit(src[i])) ++i;
            }
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
                if (j < src.size() && digit(src[j])) {
                    i = j;
                    while (i < src.size() && digit(src[i])) ++i;
                }
            }
            Token t{Tok::number, start, std::string(src.substr(start, i - start))};
            const auto res = std::from_chars(src.data() + start, src.data() + i, t.value);
            if (res.ec != std::errc())
                throw ParseError(start, "malformed number", {"number"}, line_at(src, start));
            // An 'i' glued to a number (and not starting a longer identifier) marks an imaginary literal.
            if (i < src.size() && src[i] == 'i' && (i + 1 >= src.size() || !ident_char(src[i + 1]))) {
                t.kind = Tok::imaginary;
                ++i;
                t.text = std::string(src.substr(start, i - start));
            }
            out.push_back(std::move(t));
            continue;
        }
        if (ident_start(c)) {
            while (i < src.size() && ident_char(src[i])) ++i;
            out.push_back(Token{Tok::ident, start, std::string(src.substr(start, i - start))});
            continue;
        }
        switch (c) {
        case '+':
        case '-':
        case '*':
        case '/':
        case '^': {
            Token t{Tok::op, start, std::string(1, c)};
            t.op = c;
            out.push_back(std::move(t));
            break;
        }
        case '(': out.push_back(Token{Tok::lparen, start, "("}); break;
        case ')': out.push_back(Token{Tok::rparen, start, ")"}); break;
        case ',': out.push_back(Token{Tok::comma, start, ","}); break;
        default:
            throw ParseError(start, std::string("unexpected character '") + c + "'",
                             {"number", "identifier", "operator", "(", ")"}, line_at(src, start));
        }
        ++i;
    }
    out.push_back(Token{Tok::end, src.size(), ""});
    return out;
}

} // namespace sclat::dsl::detail

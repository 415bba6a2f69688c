#include "lexer.hpp"

#include "sclat/dsl.hpp"
#include "sclat/errors.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <set>

namespace sclat::dsl {

namespace {

using detail::Tok;
using detail::Token;

std::shared_ptr<Node> make(NodeKind kind, std::size_t offset) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->offset = offset;
    return n;
}

/// Parses an axis suffix like "theta12" -> 12; returns 0 when `name` is not prefix+digits.
int axis_suffix(const std::string& name, std::string_view prefix) {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return 0;
    int axis = 0;
    const char* b = name.data() + prefix.size();
    const char* e = name.data() + name.size();
    auto res = std::from_chars(b, e, axis);
    if (res.ec != std::errc() || res.ptr != e) return 0;
    return axis == 0 ? -1 : axis;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src), toks_(detail::tokenize(src)) {}

    NodePtr parse_all() {
        NodePtr e = expr();
        if (peek().kind != Tok::end) fail(peek().offset, "unexpected '" + peek().text + "'", {"operator", "end"});
        return e;
    }

private:
    std::string_view src_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool at_op(char c) const { return peek().kind == Tok::op && peek().op == c; }

    [[noreturn]] void fail(std::size_t offset, const std::string& msg, std::vector<std::string> expected) const {
        throw ParseError(offset, msg, std::move(expected), detail::line_at(src_, offset));
    }

    NodePtr binary(char op, NodePtr lhs, NodePtr rhs, std::size_t offset) {
        auto n = make(NodeKind::binary, offset);
        n->op = op;
        n->args = {std::move(lhs), std::move(rhs)};
        return n;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (at_op('+') || at_op('-')) {
            const Token& t = next();
            lhs = binary(t.op, lhs, term(), t.offset);
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (at_op('*') || at_op('/')) {
            const Token& t = next();
            lhs = binary(t.op, lhs, unary(), t.offset);
        }
        return lhs;
    }

    NodePtr unary() {
        if (at_op('-')) {
            const Token& t = next();
            auto n = make(NodeKind::negate, t.offset);
            n->args = {unary()};
            return n;
        }
        if (at_op('+')) {
            next();
            return unary();
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (at_op('^')) {
            const Token& t = next();
            return binary('^', base, unary(), t.offset);
        }
        return base;
    }

    NodePtr primary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::number: {
            next();
            auto n = make(NodeKind::number, t.offset);
            n->number = t.value;
            return n;
        }
        case Tok::imaginary: {
            next();
            auto n = make(NodeKind::imaginary, t.offset);
            n->number = t.value;
            return n;
        }
        case Tok::lparen: {
            next();
            NodePtr e = expr();
            if (peek().kind != Tok::rparen) fail(peek().offset, "expected ')'", {")", "operator"});
            next();
            return e;
        }
        case Tok::ident: return identifier();
        case Tok::end: fail(t.offset, "unexpected end of input", {"number", "identifier", "("});
        default: fail(t.offset, "unexpected '" + t.text + "'", {"number", "identifier", "("});
        }
    }

    std::vector<NodePtr> call_args() {
        // current token is '('
        next();
        std::vector<NodePtr> args;
        if (peek().kind == Tok::rparen) {
            next();
            return args;
        }
        for (;;) {
            args.push_back(expr());
            if (peek().kind == Tok::comma) {
                next();
                continue;
            }
            if (peek().kind != Tok::rparen) fail(peek().offset, "expected ',' or ')'", {",", ")"});
            next();
            return args;
        }
    }

    NodePtr identifier() {
        const Token t = next();
        const std::string& name = t.text;
        static const std::set<std::string> functions{"sin", "cos", "exp", "sqrt", "sqnorm"};
        if (peek().kind == Tok::lparen) {
            if (!functions.count(name)) throw UnknownIdentifier("unknown function '" + name + "' at offset " + std::to_string(t.offset));
            if (name == "sqnorm") {
                const std::size_t open = peek().offset;
                next();
                const Token& arg = peek();
                if (arg.kind != Tok::ident || (arg.text != "k" && arg.text != "l")) {
                    // count arguments for an arity diagnostic before reporting a bad argument
                    if (arg.kind == Tok::rparen) throw ArityError("sqnorm expects 1 argument, got 0");
                    fail(arg.offset, "sqnorm takes the vector name k or l", {"k", "l"});
                }
                next();
                if (peek().kind == Tok::comma) throw ArityError("sqnorm expects 1 argument");
                if (peek().kind != Tok::rparen) fail(peek().offset, "expected ')'", {")"});
                next();
                auto n = make(NodeKind::sqnorm, t.offset);
                n->family = arg.text == "k" ? Family::k : Family::l;
                (void)open;
                return n;
            }
            std::vector<NodePtr> args = call_args();
            if (args.size() != 1)
                throw ArityError("function '" + name + "' expects 1 argument, got " + std::to_string(args.size()));
            auto n = make(NodeKind::call, t.offset);
            n->function = name == "sin" ? Function::sin
                          : name == "cos" ? Function::cos
                          : name == "exp" ? Function::exp
                                          : Function::sqrt;
            n->args = std::move(args);
            return n;
        }
        if (functions.count(name))
            throw UnknownIdentifier("function '" + name + "' used without arguments at offset " + std::to_string(t.offset));
        if (name == "i" || name == "pi" || name == "hbar") {
            auto n = make(NodeKind::constant, t.offset);
            n->constant = name == "i" ? Constant::i : name == "pi" ? Constant::pi : Constant::hbar;
            return n;
        }
        if (name == "absk" || name == "absl") {
            auto n = make(NodeKind::variable, t.offset);
            n->family = name == "absk" ? Family::absk : Family::absl;
            return n;
        }
        if (name == "k" || name == "l" || name == "theta")
            throw UnknownIdentifier("vector variable '" + name + "' needs an axis (e.g. " + name + "1)");
        for (auto [prefix, fam] : {std::pair<std::string_view, Family>{"theta", Family::theta},
                                   {"k", Family::k},
                                   {"l", Family::l}}) {
            const int axis = axis_suffix(name, prefix);
            if (axis < 0) throw UnknownIdentifier("axis 0 is invalid in '" + name + "' (axes start at 1)");
            if (axis > 0) {
                auto n = make(NodeKind::variable, t.offset);
                n->family = fam;
                n->axis = axis;
                return n;
            }
        }
        auto n = make(NodeKind::parameter, t.offset);
        n->name = name;
        return n;
    }
};

// ---- printing ---------------------------------------------------------------

int precedence(const Node& n) {
    switch (n.kind) {
    case NodeKind::binary:
        switch (n.op) {
        case '+':
        case '-': return 1;
        case '*':
        case '/': return 2;
        default: return 4;
        }
    case NodeKind::negate: return 3;
    default: return 5;
    }
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& child, bool parens, std::string& out) {
    if (parens) out += '(';
    print_node(child, out);
    if (parens) out += ')';
}

void print_node(const Node& n, std::string& out) {
    switch (n.kind) {
    case NodeKind::number: out += format_number(n.number); break;
    case NodeKind::imaginary: out += format_number(n.number) + "i"; break;
    case NodeKind::constant:
        out += n.constant == Constant::i ? "i" : n.constant == Constant::pi ? "pi" : "hbar";
        break;
    case NodeKind::variable:
        switch (n.family) {
        case Family::k: out += "k" + std::to_string(n.axis); break;
        case Family::l: out += "l" + std::to_string(n.axis); break;
        case Family::theta: out += "theta" + std::to_string(n.axis); break;
        case Family::absk: out += "absk"; break;
        case Family::absl: out += "absl"; break;
        }
        break;
    case NodeKind::parameter: out += n.name; break;
    case NodeKind::sqnorm: out += n.family == Family::k ? "sqnorm(k)" : "sqnorm(l)"; break;
    case NodeKind::call: {
        static const char* names[] = {"sin", "cos", "exp", "sqrt"};
        out += names[static_cast<int>(n.function)];
        out += '(';
        print_node(*n.args[0], out);
        out += ')';
        break;
    }
    case NodeKind::negate:
        out += '-';
        print_child(*n.args[0], precedence(*n.args[0]) < 3, out);
        break;
    case NodeKind::binary: {
        const Node& a = *n.args[0];
        const Node& b = *n.args[1];
        if (n.op == '^') {
            print_child(a, precedence(a) <= 4, out);
            out += "^";
            print_child(b, precedence(b) < 3, out);
        } else {
            const int p = precedence(n);
            print_child(a, precedence(a) < p, out);
            out += ' ';
            out += n.op;
            out += ' ';
            print_child(b, precedence(b) <= p, out);
        }
        break;
    }
    }
}

bool equal_nodes(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case NodeKind::number:
    case NodeKind::imaginary: return a.number == b.number;
    case NodeKind::constant: return a.constant == b.constant;
    case NodeKind::variable: return a.family == b.family && a.axis == b.axis;
    case NodeKind::parameter: return a.name == b.name;
    case NodeKind::sqnorm: return a.family == b.family;
    case NodeKind::call:
        if (a.function != b.function) return false;
        break;
    case NodeKind::binary:
        if (a.op != b.op) return false;
        break;
    case NodeKind::negate: break;
    }
    if (a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!equal_nodes(*a.args[i], *b.args[i])) return false;
    return true;
}

void walk(const Node& n, const std::function<void(const Node&)>& f) {
    f(n);
    for (const auto& c : n.args) walk(*c, f);
}

NodePtr literal(cplx v, std::size_t offset) {
    auto real_part = [&](double x) -> NodePtr {
        auto num = make(NodeKind::number, offset);
        num->number = std::abs(x);
        if (std::signbit(x)) {
            auto neg = make(NodeKind::negate, offset);
            neg->args = {num};
            return neg;
        }
        return num;
    };
    if (v.imag() == 0.0) return real_part(v.real());
    auto im = make(NodeKind::imaginary, offset);
    im->number = std::abs(v.imag());
    if (v.real() == 0.0) {
        if (!std::signbit(v.imag())) return im;
        auto neg = make(NodeKind::negate, offset);
        neg->args = {im};
        return neg;
    }
    auto sum = make(NodeKind::binary, offset);
    sum->op = std::signbit(v.imag()) ? '-' : '+';
    sum->args = {real_part(v.real()), im};
    return sum;
}

NodePtr substitute_node(const NodePtr& n, const Params& params) {
    if (n->kind == NodeKind::parameter) {
        auto it = params.find(n->name);
        if (it == params.end()) return n;
        return literal(it->second, n->offset);
    }
    if (n->args.empty()) return n;
    auto copy = std::make_shared<Node>(*n);
    for (auto& c : copy->args) c = substitute_node(c, params);
    return copy;
}

} // namespace

Expr parse(std::string_view src) {
    Parser p(src);
    return Expr(p.parse_all(), std::string(src));
}

std::string print(const Expr& e) {
    std::string out;
    if (!e.empty()) print_node(e.root(), out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.empty() || b.empty()) return a.empty() == b.empty();
    return equal_nodes(a.root(), b.root());
}

std::vector<std::string> parameters(const Expr& e) {
    std::set<std::string> names;
    if (!e.empty())
        walk(e.root(), [&](const Node& n) {
            if (n.kind == NodeKind::parameter) names.insert(n.name);
        });
    return {names.begin(), names.end()};
}

int max_axis(const Expr& e, Family family) {
    int m = 0;
    if (!e.empty())
        walk(e.root(), [&](const Node& n) {
            if (n.kind == NodeKind::variable && n.family == family) m = std::max(m, n.axis);
        });
    return m;
}

bool uses(const Expr& e, Family family) {
    bool found = false;
    if (!e.empty())
        walk(e.root(), [&](const Node& n) {
            if ((n.kind == NodeKind::variable || n.kind == NodeKind::sqnorm) && n.family == family) found = true;
            if (n.kind == NodeKind::sqnorm && n.family == Family::k && family == Family::absk) found = true;
            if (n.kind == NodeKind::sqnorm && n.family == Family::l && family == Family::absl) found = true;
        });
    return found;
}

Expr substitute(const Expr& e, const Params& params) {
    if (e.empty()) return e;
    return Expr(substitute_node(e.root_ptr(), params), e.source());
}

} // namespace sclat::dsl

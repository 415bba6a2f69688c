#pragma once

#include "sclat/lattice.hpp"

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sclat {
class Symbol;
class Amplitude;
}

/// Expression language for symbols σ(k,θ), amplitudes a(k,l,θ) and torus
/// functions q(θ).
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := ('-' | '+') unary | power
///     power   := primary ('^' unary)?          right associative
///     primary := number | number 'i' | ident | ident '(' args ')' | '(' expr ')'
///
/// Identifiers: i, pi, hbar, k1..kn, l1..ln, theta1..thetan, absk, absl;
/// functions sin, cos, exp, sqrt (one argument) and sqnorm(k) / sqnorm(l).
/// Any other bare identifier is a named parameter bound at evaluation time.
/// Exponents of `^` must evaluate to integers.
namespace sclat::dsl {

enum class NodeKind { number, imaginary, constant, variable, parameter, negate, binary, call, sqnorm };
enum class Constant { i, pi, hbar };
enum class Family { k, l, theta, absk, absl };
enum class Function { sin, cos, exp, sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind;
    std::size_t offset = 0;   ///< byte offset in the source
    double number = 0.0;      ///< number / imaginary
    Constant constant = Constant::i;
    Family family = Family::k;  ///< variable / sqnorm
    int axis = 0;               ///< 1-based axis for k, l, theta
    std::string name;           ///< parameter name
    char op = 0;                ///< binary: + - * / ^
    Function function = Function::sin;
    std::vector<NodePtr> args;
};

/// Immutable parsed expression.
class Expr {
public:
    Expr() = default;
    Expr(NodePtr root, std::string source) : root_(std::move(root)), source_(std::move(source)) {}
    const Node& root() const { return *root_; }
    const NodePtr& root_ptr() const noexcept { return root_; }
    const std::string& source() const noexcept { return source_; }
    bool empty() const noexcept { return !root_; }

private:
    NodePtr root_;
    std::string source_;
};

/// Parse `src`; throws ParseError (with byte offset), ArityError or UnknownIdentifier.
Expr parse(std::string_view src);

/// Canonical text form; parse(print(e)) is structurally identical to e.
std::string print(const Expr& e);

/// Structural equality of two trees (numbers compared exactly).
bool structurally_equal(const Expr& a, const Expr& b);

/// Values for free variables. Spans may be empty when a family is unused.
struct Bindings {
    std::span<const double> k;
    std::span<const double> l;
    std::span<const double> theta;
    double hbar = 1.0;
    const std::map<std::string, cplx>* params = nullptr;
};

/// Evaluate with complex arithmetic; throws DivisionNearZero, UnboundIdentifier,
/// NonIntegerExponent, UnknownIdentifier (axis outside the bound vector).
cplx evaluate(const Expr& e, const Bindings& b);

/// Names of the parameters referenced by `e`.
std::vector<std::string> parameters(const Expr& e);
/// Largest axis index used per family (0 if unused).
int max_axis(const Expr& e, Family family);
/// Whether the expression mentions the family at all (sqnorm counts).
bool uses(const Expr& e, Family family);

/// Replace parameters by their values (parameters not in `params` stay free).
Expr substitute(const Expr& e, const std::map<std::string, cplx>& params);

using Params = std::map<std::string, cplx>;

Symbol tabulate_symbol(const Expr& e, const LatticeModel& model, const Params& params = {});
Amplitude tabulate_amplitude(const Expr& e, const LatticeModel& model, const Params& params = {},
                             std::size_t memory_budget_bytes = std::size_t{1} << 30);
TorusFunction tabulate_torus(const Expr& e, const LatticeModel& model, const Params& params = {});

} // namespace sclat::dsl

#include "sclat/dsl.hpp"

#include "sclat/errors.hpp"
#include "sclat/symbol.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace sclat::dsl {

namespace {

constexpr double kDivisionFloor = 1e-14;

std::string describe_point(const Bindings& b) {
    std::ostringstream os;
    os.precision(17);
    auto vec = [&](const char* name, std::span<const double> v) {
        if (v.empty()) return;
        os << name << "=(";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << ") ";
    };
    vec("k", b.k);
    vec("l", b.l);
    vec("theta", b.theta);
    os << "hbar=" << b.hbar;
    return os.str();
}

double axis_value(std::span<const double> v, int axis, const char* name) {
    if (axis < 1 || static_cast<std::size_t>(axis) > v.size())
        throw UnknownIdentifier(std::string(name) + std::to_string(axis) + " is not defined for dimension " +
                                std::to_string(v.size()));
    return v[static_cast<std::size_t>(axis - 1)];
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

cplx divide(cplx a, cplx b, const Bindings& bind, std::size_t offset) {
    if (std::abs(b) < kDivisionFloor) throw DivisionNearZero(describe_point(bind), offset);
    return a / b;
}

cplx int_power(cplx base, long long e, const Bindings& bind, std::size_t offset) {
    const bool negative = e < 0;
    unsigned long long u = negative ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    cplx result = 1.0;
    cplx b = base;
    while (u) {
        if (u & 1ULL) result *= b;
        b *= b;
        u >>= 1ULL;
    }
    return negative ? divide(1.0, result, bind, offset) : result;
}

cplx eval(const Node& n, const Bindings& b) {
    switch (n.kind) {
    case NodeKind::number: return n.number;
    case NodeKind::imaginary: return {0.0, n.number};
    case NodeKind::constant:
        switch (n.constant) {
        case Constant::i: return {0.0, 1.0};
        case Constant::pi: return std::numbers::pi;
        case Constant::hbar: return b.hbar;
        }
        break;
    case NodeKind::variable:
        switch (n.family) {
        case Family::k: return axis_value(b.k, n.axis, "k");
        case Family::l: return axis_value(b.l, n.axis, "l");
        case Family::theta: return axis_value(b.theta, n.axis, "theta");
        case Family::absk: return std::sqrt(norm2(b.k));
        case Family::absl: return std::sqrt(norm2(b.l));
        }
        break;
    case NodeKind::sqnorm: return norm2(n.family == Family::k ? b.k : b.l);
    case NodeKind::parameter: {
        if (b.params) {
            auto it = b.params->find(n.name);
            if (it != b.params->end()) return it->second;
        }
        throw UnboundIdentifier("parameter '" + n.name + "' is not bound");
    }
    case NodeKind::negate: return cplx(0.0) - eval(*n.args[0], b);  // keeps +0 imaginary parts off the sqrt branch cut
    case NodeKind::call: {
        const cplx x = eval(*n.args[0], b);
        switch (n.function) {
        case Function::sin: return std::sin(x);
        case Function::cos: return std::cos(x);
        case Function::exp: return std::exp(x);
        case Function::sqrt: return std::sqrt(x);
        }
        break;
    }
    case NodeKind::binary: {
        const cplx x = eval(*n.args[0], b);
        const cplx y = eval(*n.args[1], b);
        switch (n.op) {
        case '+': return x + y;
        case '-': return x - y;
        case '*': return x * y;
        case '/': return divide(x, y, b, n.offset);
        case '^': {
            const double r = std::round(y.real());
            if (y.imag() != 0.0 || std::abs(y.real() - r) > 1e-12 * std::max(1.0, std::abs(r)))
                throw NonIntegerExponent("exponent at offset " + std::to_string(n.offset) + " is not an integer");
            return int_power(x, static_cast<long long>(r), b, n.offset);
        }
        default: break;
        }
        break;
    }
    }
    throw Error("dsl: corrupt expression tree");
}

void require_dims(const Expr& e, int n) {
    for (auto [fam, name] : {std::pair<Family, const char*>{Family::k, "k"}, {Family::l, "l"}, {Family::theta, "theta"}}) {
        const int a = max_axis(e, fam);
        if (a > n)
            throw UnknownIdentifier(std::string(name) + std::to_string(a) + " exceeds the model dimension " +
                                    std::to_string(n));
    }
}

void require_bound(const Expr& e) {
    const auto free = parameters(e);
    if (!free.empty()) throw UnboundIdentifier("parameter '" + free.front() + "' is not bound");
}

void rethrow_at(const DivisionNearZero& err, const std::string& where) {
    throw DivisionNearZero(err.point() + " (" + where + ")", err.offset());
}

} // namespace

cplx evaluate(const Expr& e, const Bindings& b) {
    if (e.empty()) throw Error("dsl: evaluating an empty expression");
    return eval(e.root(), b);
}

Symbol tabulate_symbol(const Expr& e, const LatticeModel& model, const Params& params) {
    if (uses(e, Family::l) || uses(e, Family::absl))
        throw UnknownIdentifier("symbol expressions may not use the amplitude variables l / absl");
    require_dims(e, model.dim());
    const Expr bound = substitute(e, params);
    require_bound(bound);
    const int n = model.dim();
    const std::size_t N = model.size();
    std::vector<cplx> table(N * N);
    std::vector<double> k(static_cast<std::size_t>(n)), th(static_cast<std::size_t>(n));
    Bindings b{k, {}, th, model.hbar(), nullptr};
    for (std::size_t p = 0; p < N; ++p) {
        for (int j = 0; j < n; ++j) k[static_cast<std::size_t>(j)] = model.coordinate(p, j);
        for (std::size_t t = 0; t < N; ++t) {
            for (int j = 0; j < n; ++j) th[static_cast<std::size_t>(j)] = model.theta(t, j);
            try {
                table[p * N + t] = eval(bound.root(), b);
            } catch (const DivisionNearZero& err) {
                rethrow_at(err, "box point " + std::to_string(p) + ", grid point " + std::to_string(t));
            }
        }
    }
    return Symbol(model, std::move(table));
}

Amplitude tabulate_amplitude(const Expr& e, const LatticeModel& model, const Params& params,
                             std::size_t memory_budget_bytes) {
    require_dims(e, model.dim());
    const Expr bound = substitute(e, params);
    require_bound(bound);
    Amplitude a(model, memory_budget_bytes);
    const int n = model.dim();
    const std::size_t N = model.size();
    std::vector<double> k(static_cast<std::size_t>(n)), l(static_cast<std::size_t>(n)), th(static_cast<std::size_t>(n));
    Bindings b{k, l, th, model.hbar(), nullptr};
    for (std::size_t p = 0; p < N; ++p) {
        for (int j = 0; j < n; ++j) k[static_cast<std::size_t>(j)] = model.coordinate(p, j);
        for (std::size_t q = 0; q < N; ++q) {
            for (int j = 0; j < n; ++j) l[static_cast<std::size_t>(j)] = model.coordinate(q, j);
            for (std::size_t t = 0; t < N; ++t) {
                for (int j = 0; j < n; ++j) th[static_cast<std::size_t>(j)] = model.theta(t, j);
                try {
                    a.at(p, q, t) = eval(bound.root(), b);
                } catch (const DivisionNearZero& err) {
                    rethrow_at(err, "box points " + std::to_string(p) + "," + std::to_string(q) + ", grid point " +
                                        std::to_string(t));
                }
            }
        }
    }
    return a;
}

TorusFunction tabulate_torus(const Expr& e, const LatticeModel& model, const Params& params) {
    if (uses(e, Family::k) || uses(e, Family::l) || uses(e, Family::absk) || uses(e, Family::absl))
        throw UnknownIdentifier("torus expressions may only use theta variables");
    require_dims(e, model.dim());
    const Expr bound = substitute(e, params);
    require_bound(bound);
    const int n = model.dim();
    TorusFunction q(model);
    std::vector<double> th(static_cast<std::size_t>(n));
    Bindings b{{}, {}, th, model.hbar(), nullptr};
    for (std::size_t t = 0; t < model.size(); ++t) {
        for (int j = 0; j < n; ++j) th[static_cast<std::size_t>(j)] = model.theta(t, j);
        try {
            q[t] = eval(bound.root(), b);
        } catch (const DivisionNearZero& err) {
            rethrow_at(err, "grid point " + std::to_string(t));
        }
    }
    return q;
}

} // namespace sclat::dsl

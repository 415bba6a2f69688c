#include "sclat/dsl.hpp"
#include "sclat/errors.hpp"
#include "sclat/symbol.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace sclat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_top_level(std::string_view s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == ',' && depth == 0) {
            parts.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    parts.push_back(trim(s.substr(start)));
    return parts;
}

cplx constant_value(const std::string& text, const std::string& name) {
    try {
        const dsl::Expr e = dsl::parse(text);
        return dsl::evaluate(e, dsl::Bindings{});
    } catch (const Error& err) {
        throw BadParameter("built-in parameter '" + name + "': '" + text + "' is not a constant (" + err.what() + ")");
    }
}

const std::vector<std::string>& param_names(const std::string& name) {
    for (const auto& [n, params] : builtin_catalog())
        if (n == name) return params;
    throw UnknownBuiltin("unknown built-in '" + name + "'");
}

cplx get(const BuiltinSpec& spec, const std::string& key, cplx fallback) {
    auto it = spec.values.find(key);
    return it == spec.values.end() ? fallback : it->second;
}

double get_real(const BuiltinSpec& spec, const std::string& key, double fallback) {
    const cplx v = get(spec, key, fallback);
    if (v.imag() != 0.0) throw BadParameter("built-in " + spec.name + ": parameter '" + key + "' must be real");
    return v.real();
}

int get_axis(const BuiltinSpec& spec, int n) {
    const double j = get_real(spec, "j", 1.0);
    if (j != std::round(j) || j < 1 || j > n)
        throw BadParameter("built-in " + spec.name + ": axis j must be an integer in [1, " + std::to_string(n) + "]");
    return static_cast<int>(j) - 1;
}

std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fmt(cplx v) {
    if (v.imag() == 0.0) return "(" + fmt(v.real()) + ")";
    return "(" + fmt(v.real()) + (std::signbit(v.imag()) ? " - " : " + ") + fmt(std::abs(v.imag())) + "i)";
}

/// DSL text for base^s where 2s is an integer.
std::string power_text(const std::string& base, double s, const std::string& who) {
    if (s == std::round(s)) return "(" + base + ")^(" + fmt(s) + ")";
    if (2.0 * s == std::round(2.0 * s)) return "sqrt(" + base + ")^(" + fmt(2.0 * s) + ")";
    throw BadParameter("built-in " + who + ": no DSL twin for exponent " + fmt(s) + " (needs 2s integer)");
}

} // namespace

const std::vector<std::pair<std::string, std::vector<std::string>>>& builtin_catalog() {
    static const std::vector<std::pair<std::string, std::vector<std::string>>> catalog{
        {"example1", {"j"}},
        {"example2", {"r", "s", "a", "b", "j"}},
        {"example3", {"c"}},
        {"intro", {"a"}},
        {"multiplier", {"expr"}},
        {"weight", {"s"}},
    };
    return catalog;
}

BuiltinSpec parse_builtin(std::string_view text) {
    const std::string src = trim(text);
    BuiltinSpec spec;
    const std::size_t open = src.find('(');
    spec.name = trim(std::string_view(src).substr(0, open));
    const auto& names = param_names(spec.name);
    if (open == std::string::npos) return spec;
    if (src.back() != ')') throw BadParameter("built-in '" + src + "': missing closing ')'");
    const std::string inner = src.substr(open + 1, src.size() - open - 2);
    if (spec.name == "multiplier") {
        std::string body = trim(inner);
        if (body.rfind("expr", 0) == 0) {
            const std::string rest = trim(std::string_view(body).substr(4));
            if (!rest.empty() && rest.front() == '=') body = trim(std::string_view(rest).substr(1));
        }
        spec.expr = body;
        return spec;
    }
    if (trim(inner).empty()) return spec;
    std::size_t position = 0;
    for (const std::string& part : split_top_level(inner)) {
        const std::size_t eq = part.find('=');
        std::string key, value;
        if (eq == std::string::npos) {
            if (position >= names.size())
                throw BadParameter("built-in " + spec.name + ": too many positional arguments");
            key = names[position++];
            value = part;
        } else {
            key = trim(std::string_view(part).substr(0, eq));
            value = trim(std::string_view(part).substr(eq + 1));
            if (std::find(names.begin(), names.end(), key) == names.end())
                throw BadParameter("built-in " + spec.name + ": unknown parameter '" + key + "'");
        }
        spec.values[key] = constant_value(value, key);
    }
    return spec;
}

Symbol builtin(std::string_view text, const LatticeModel& model) { return builtin(parse_builtin(text), model); }

Symbol builtin(const BuiltinSpec& spec, const LatticeModel& model) {
    const int n = model.dim();
    const int M = model.points_per_axis();
    const std::size_t N = model.size();
    (void)param_names(spec.name);

    if (spec.name == "example1") {
        const int j = get_axis(spec, n);
        return Symbol::from_function(model, [&](std::size_t, std::size_t t) {
                   return std::polar(1.0, kTwoPi * model.theta(t, j)) - 1.0;
               }).with_class({0.0, 1.0, 0.0});
    }
    if (spec.name == "example2") {
        const double r = get_real(spec, "r", 1.0);
        const double s = get_real(spec, "s", 0.0);
        const cplx a = get(spec, "a", 1.0);
        const cplx b = get(spec, "b", 1.0);
        const int j = get_axis(spec, n);
        if (r < 0.0 || s < 0.0) throw BadParameter("built-in example2: negative exponents are singular at k = 0");
        auto pw = [](double x, double e) { return e == 0.0 ? 1.0 : std::pow(x, e); };
        return Symbol::from_function(model, [&](std::size_t p, std::size_t t) {
                   const double ak = model.abs_k(p);
                   const double th = model.theta(t, j);
                   // e^{−2πi m·θ} with the phase reduced modulo M before scaling.
                   const cplx phase = std::polar(1.0, -kTwoPi * model.phase_index(p, t) / M);
                   return pw(ak, r) * (std::polar(1.0, kTwoPi * th) + phase * a) -
                          pw(ak, s) * (std::polar(1.0, -kTwoPi * th) + phase * b);
               }).with_class({std::max(r, s), 1.0, 0.0});
    }
    if (spec.name == "example3") {
        const cplx c = get(spec, "c", 3.0);
        return Symbol::from_function(model, [&](std::size_t, std::size_t t) {
                   double s = 0.0;
                   for (int i = 0; i < n; ++i) s += std::sin(kTwoPi * model.theta(t, i));
                   return cplx(0.0, 2.0 * s) + c;
               }).with_class({0.0, 1.0, 0.0});
    }
    if (spec.name == "intro") {
        const cplx a = get(spec, "a", cplx(2.0, 1.0));
        return Symbol::from_function(model, [&](std::size_t, std::size_t t) {
                   double s = 0.0;
                   for (int i = 0; i < n; ++i) s += std::cos(kTwoPi * model.theta(t, i));
                   return 2.0 * s - 2.0 * a;
               }).with_class({0.0, 1.0, 0.0});
    }
    if (spec.name == "multiplier") {
        if (spec.expr.empty()) throw BadParameter("built-in multiplier: missing expression");
        const TorusFunction q = dsl::tabulate_torus(dsl::parse(spec.expr), model, spec.values);
        return Symbol::multiplier(q).with_class({0.0, 1.0, 0.0});
    }
    if (spec.name == "weight") {
        const double s = get_real(spec, "s", 1.0);
        const std::vector<double> w = model.weights(s);
        std::vector<cplx> table(N * N);
        for (std::size_t p = 0; p < N; ++p) std::fill_n(table.begin() + static_cast<std::ptrdiff_t>(p * N), N, w[p]);
        return Symbol(model, std::move(table), SymbolClass{s, 1.0, 0.0});
    }
    throw UnknownBuiltin("unknown built-in '" + spec.name + "'");
}

std::string builtin_dsl_twin(const BuiltinSpec& spec, int n) {
    (void)param_names(spec.name);
    auto sum_over_axes = [&](const std::string& f) {
        std::string s = "(";
        for (int j = 1; j <= n; ++j) s += (j > 1 ? " + " : "") + f + "(2*pi*theta" + std::to_string(j) + ")";
        return s + ")";
    };
    if (spec.name == "example1") {
        const int j = get_axis(spec, n) + 1;
        return "exp(2*pi*i*theta" + std::to_string(j) + ") - 1";
    }
    if (spec.name == "example2") {
        const double r = get_real(spec, "r", 1.0);
        const double s = get_real(spec, "s", 0.0);
        const cplx a = get(spec, "a", 1.0);
        const cplx b = get(spec, "b", 1.0);
        const std::string j = std::to_string(get_axis(spec, n) + 1);
        std::string dot;
        for (int i = 1; i <= n; ++i) dot += (i > 1 ? " + " : "") + ("k" + std::to_string(i)) + "*theta" + std::to_string(i);
        const std::string phase = "exp(-2*pi*i*(" + dot + ")/hbar)";
        const std::string kr = r == 0.0 ? "1" : power_text("absk", r, spec.name);
        const std::string ks = s == 0.0 ? "1" : power_text("absk", s, spec.name);
        return kr + "*(exp(2*pi*i*theta" + j + ") + " + phase + "*" + fmt(a) + ") - " + ks + "*(exp(-2*pi*i*theta" +
               j + ") + " + phase + "*" + fmt(b) + ")";
    }
    if (spec.name == "example3") return "2*i*" + sum_over_axes("sin") + " + " + fmt(get(spec, "c", 3.0));
    if (spec.name == "intro") return "2*" + sum_over_axes("cos") + " - 2*" + fmt(get(spec, "a", cplx(2.0, 1.0)));
    if (spec.name == "multiplier") return spec.expr;
    if (spec.name == "weight") return power_text("1 + absk", get_real(spec, "s", 1.0), spec.name);
    throw UnknownBuiltin("unknown built-in '" + spec.name + "'");
}

} // namespace sclat

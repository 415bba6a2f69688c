// Command-line front-end for the lattice calculus library.
//
//   sclat <command> [subcommand] [flags] [-- key=value ...]
//
// Every command prints a JSON report (or CSV with --format csv where a table
// exists) and writes it to --out when given. Exit codes: 0 when every
// requested certificate passes, 2 when one fails, 1 on usage errors.

#include "sclat/analysis.hpp"
#include "sclat/calculus.hpp"
#include "sclat/difference.hpp"
#include "sclat/dsl.hpp"
#include "sclat/errors.hpp"
#include "sclat/limit.hpp"
#include "sclat/pde.hpp"
#include "sclat/quantize.hpp"
#include "sclat/report.hpp"
#include "sclat/simd.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

using namespace sclat;
using report::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCertificate = 2;

struct Globals {
    int dim = 1;
    double hbar = 0.5;
    int points = 16;
    std::string symbol;
    std::string builtin_text;
    std::string class_text;  // "mu,rho,delta"
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 1;
    dsl::Params params;
    std::vector<std::string> raw_params;
};

struct Options {
    int max_alpha = 2, max_beta = 2;
    double mu = std::nan("");
    int q_max = 3;
    bool export_kernel = false;
    int order = 3;
    std::string rule = "complete";
    std::string tau_symbol, tau_builtin;
    double p = 2.0;
    double m = 1.0;
    double s = 0.0;
    double fraction = 0.75;
    std::vector<int> ranks{0, 1, 2, 4};
    std::string method = "direct";
    std::string rhs = "random";
    double tol = 1e-10;
    double T = 1.0, dt = 0.125;
    std::string scheme = "implicit-euler";
    std::string source = "zero";
    std::string function = "plane";
    int limit_order = 0;  // 0: 1 for diff/dderiv, 2 for compose
    std::vector<double> hbars{0.5, 0.25, 0.125, 0.0625, 0.03125};
    double window = 2.0;
};

/// Raised for command-line mistakes the CLI itself detects.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- symbol resolution -----------------------------------------------------

std::optional<SymbolClass> parse_class(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
    if (v.size() != 3) throw UsageError("--class expects mu,rho,delta");
    return SymbolClass{v[0], v[1], v[2]};
}

SymbolSource make_source(const std::string& symbol, const std::string& builtin_text, const Globals& g) {
    if (!symbol.empty() && !builtin_text.empty()) throw UsageError("give either a DSL symbol or a built-in, not both");
    const auto cls = parse_class(g.class_text);
    if (!symbol.empty()) {
        const dsl::Expr e = dsl::parse(symbol);
        const dsl::Params params = g.params;
        return [e, params, cls](const LatticeModel& m) {
            Symbol s = dsl::tabulate_symbol(e, m, params);
            return cls ? s.with_class(*cls) : s;
        };
    }
    if (!builtin_text.empty()) {
        BuiltinSpec spec = parse_builtin(builtin_text);
        for (const auto& [k, v] : g.params)
            if (!spec.values.count(k)) spec.values[k] = v;
        return [spec, cls](const LatticeModel& m) {
            Symbol s = builtin(spec, m);
            return cls ? s.with_class(*cls) : s;
        };
    }
    throw UsageError("no symbol given: use --symbol \"<expr>\" or --builtin name(params)");
}

LatticeModel model_of(const Globals& g) { return LatticeModel(g.dim, g.hbar, g.points); }

json config_json(const Globals& g, const std::string& command, const json& options) {
    json params = json::object();
    for (const auto& [k, v] : g.params) params[k] = report::to_json(v);
    return {{"command", command}, {"dim", g.dim},         {"hbar", g.hbar},       {"points", g.points},
            {"symbol", g.symbol}, {"builtin", g.builtin_text}, {"class", g.class_text}, {"seed", g.seed},
            {"params", params},   {"options", options},   {"isa", simd::isa_name(simd::active_isa())}};
}

// ---- output ------------------------------------------------------------------

struct Output {
    json doc;
    std::string csv;  // empty when the report has no table form
    bool pass = true;
};

int emit(const Globals& g, const std::string& name, Output out) {
    out.doc["pass"] = out.pass;
    const std::string text = out.doc.dump(2) + "\n";
    const bool want_csv = g.format == "csv" && !out.csv.empty();
    std::cout << (want_csv ? out.csv : text);
    if (!g.out.empty()) {
        const std::filesystem::path dir(g.out);
        report::write_atomic(dir / (name + ".json"), text);
        if (!out.csv.empty()) report::write_atomic(dir / (name + ".csv"), out.csv);
    }
    return out.pass ? kExitPass : kExitCertificate;
}

LatticeFunction make_rhs(const std::string& kind, const LatticeModel& m, std::mt19937_64& rng) {
    if (kind == "delta") return LatticeFunction::delta(m, 0);
    if (kind == "random") return random_lattice_function(m, rng);
    if (kind == "gaussian") {
        LatticeFunction f(m);
        for (std::size_t p = 0; p < m.size(); ++p) f[p] = std::exp(-m.abs_k(p) * m.abs_k(p));
        return f;
    }
    throw UsageError("unknown right-hand side '" + kind + "' (delta, random, gaussian)");
}

bool nonincreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1] * (1.0 + 1e-9) + 1e-13) return false;
    return true;
}

// ---- commands ------------------------------------------------------------------

Output cmd_selftest(const Globals& g) {
    const LatticeModel m = model_of(g);
    std::mt19937_64 rng(g.seed);
    Output out;
    json checks = json::array();
    auto record = [&](const std::string& name, double value, double tol) {
        const bool ok = value <= tol;
        out.pass = out.pass && ok;
        checks.push_back({{"check", name}, {"value", value}, {"tol", tol}, {"pass", ok}});
    };

    double plancherel = 0.0;
    for (int i = 0; i < 10; ++i) {
        const LatticeFunction f = random_lattice_function(m, rng);
        const double a = l2_norm(f), b = l2_norm(forward_fourier(f));
        plancherel = std::max(plancherel, std::abs(a - b) / a);
        const LatticeFunction back = inverse_fourier(forward_fourier(f));
        double r = 0.0;
        for (std::size_t p = 0; p < m.size(); ++p) r = std::max(r, std::abs(back[p] - f[p]));
        record("fourier_roundtrip", r, 1e-12);
    }
    record("plancherel", plancherel, 1e-12);

    double diff_gap = 0.0;
    for (const MultiIndex& a : multi_indices_up_to(m.dim(), 3)) {
        const LatticeFunction f = random_lattice_function(m, rng);
        const LatticeFunction direct = forward_difference(f, a);
        TorusFunction F = forward_fourier(f);
        const TorusFunction q = diff_multiplier(a, m);
        for (std::size_t t = 0; t < m.size(); ++t) F[t] *= q[t];
        const LatticeFunction spectral = inverse_fourier(F);
        double scale = 1.0;
        for (std::size_t p = 0; p < m.size(); ++p) scale = std::max(scale, std::abs(direct[p]));
        for (std::size_t p = 0; p < m.size(); ++p)
            diff_gap = std::max(diff_gap, std::abs(direct[p] - spectral[p]) / scale);
    }
    record("difference_multiplier", diff_gap, 1e-10);

    if (m.size() <= 1024) {
        const Symbol s = Symbol::from_function(m, [&](std::size_t, std::size_t) { return random_complex(rng); });
        const Symbol back = extract_symbol(kernel(s));
        record("kernel_roundtrip", hs_distance(s, back), 1e-11 * std::sqrt(double(m.size())));
        record("hs_identity", hs_norm_check(s).gap, 1e-10);
    }
    out.doc = report::envelope("selftest", config_json(g, "selftest", json::object()));
    out.doc["checks"] = checks;
    return out;
}

Output cmd_symbol_check(const Globals& g, const Options& o) {
    const LatticeModel m = model_of(g);
    const Symbol s = make_source(g.symbol, g.builtin_text, g)(m);
    const double mu = std::isnan(o.mu) ? (s.declared_class() ? s.declared_class()->mu : 0.0) : o.mu;
    Output out;
    out.doc = report::envelope("symbol_check", config_json(g, "symbol check",
                                                           {{"max_alpha", o.max_alpha}, {"max_beta", o.max_beta}, {"mu", mu}}));
    if (s.declared_class())
        out.doc["seminorms"] = report::to_json(seminorm_estimate(s, o.max_alpha, o.max_beta));
    else
        out.doc["seminorms"] = nullptr;
    const EllipticityReport ell = ellipticity_check(s, mu);
    out.doc["ellipticity"] = report::to_json(ell);
    return out;
}

Output cmd_kernel(const Globals& g, const Options& o) {
    const LatticeModel m = model_of(g);
    const Symbol s = make_source(g.symbol, g.builtin_text, g)(m);
    Output out;
    out.doc = report::envelope("kernel", config_json(g, "kernel", {{"q_max", o.q_max}, {"export", o.export_kernel}}));
    out.doc["decay"] = report::to_json(kernel_decay_report(s, o.q_max));
    if (o.export_kernel) {
        std::ostringstream os;
        write_kernel_csv(kernel(s), os);
        out.csv = os.str();
    }
    return out;
}

Output cmd_calculus(const Globals& g, const Options& o, const std::string& which) {
    const LatticeModel m = model_of(g);
    const Symbol s = make_source(g.symbol, g.builtin_text, g)(m);
    Output out;
    json opts = {{"order", o.order}};
    if (which == "parametrix") {
        opts["rule"] = o.rule;
        if (o.rule != "complete" && o.rule != "literal") throw UsageError("--rule must be complete or literal");
        const ParametrixResult r =
            parametrix({s}, o.order, o.rule == "complete" ? ParametrixRule::complete : ParametrixRule::literal);
        out.doc = report::envelope("parametrix", config_json(g, "calculus parametrix", opts));
        out.doc["parametrix"] = report::to_json(r);
        out.csv = report::parametrix_csv(r);
        out.pass = nonincreasing(r.left_hs) && nonincreasing(r.right_hs);
        return out;
    }
    if (which == "compose") {
        opts["tau_symbol"] = o.tau_symbol;
        opts["tau_builtin"] = o.tau_builtin;
    }
    const ExpansionResult r = [&] {
        if (which == "compose") return compose_asymptotic(s, make_source(o.tau_symbol, o.tau_builtin, g)(m), o.order);
        if (which == "adjoint") return adjoint_asymptotic(s, o.order);
        return transpose_asymptotic(s, o.order);
    }();
    out.doc = report::envelope(which, config_json(g, "calculus " + which, opts));
    out.doc["expansion"] = report::to_json(r);
    out.csv = report::expansion_csv(r);
    out.pass = nonincreasing(r.residual_hs);
    return out;
}

Output cmd_analyze(const Globals& g, const Options& o, const std::string& which) {
    const LatticeModel m = model_of(g);
    const SymbolSource src = make_source(g.symbol, g.builtin_text, g);
    const Symbol s = src(m);
    Output out;
    json opts = json::object();
    json body;
    if (which == "hs") {
        const HsReport r = hs_norm_check(s);
        body = report::to_json(r);
        out.pass = r.gap <= 1e-10 * std::max(1.0, r.frobenius_norm);
    } else if (which == "lp") {
        opts["p"] = o.p;
        const YoungReport r = lp_bound_young(s, o.p, g.seed);
        body = report::to_json(r);
        out.pass = r.holds;
    } else if (which == "schatten") {
        opts["p"] = o.p;
        const SchattenReport r = schatten_report(s, o.p);
        body = report::to_json(r);
        out.pass = r.bound_holds;
        if (o.p == 1.0) {
            const double scale = std::max(1.0, std::abs(r.matrix_trace));
            out.pass = out.pass && std::abs(r.matrix_trace - r.symbol_trace) <= 1e-9 * scale &&
                       std::abs(r.matrix_trace - r.eigenvalue_sum) <= 1e-9 * scale;
        }
    } else if (which == "garding") {
        opts["m"] = o.m;
        const GardingReport r = garding_constants(s, o.m);
        body = report::to_json(r);
        out.pass = r.verified;
    } else if (which == "sharp-garding") {
        opts["m"] = o.m;
        const SharpGardingReport r = sharp_garding_trend(src, m, o.m);
        body = report::to_json(r);
        out.pass = std::isfinite(r.C);
    } else if (which == "link") {
        const LinkReport r = link_check(s);
        body = report::to_json(r);
        out.pass = r.holds;
    } else if (which == "gohberg") {
        opts["ranks"] = o.ranks;
        opts["fraction"] = o.fraction;
        const CompactnessReport c = compactness_indicator(src, m, o.fraction);
        const GohbergReport r = gohberg_gap(s, o.ranks, o.fraction, std::min(0.0, c.trend));
        body = report::to_json(r);
        body["compactness"] = report::to_json(c);
        out.pass = r.holds;
    } else if (which == "weighted") {
        opts["s"] = o.s;
        const WeightedReport r = weighted_bound_trend(src, m, o.s);
        body = report::to_json(r);
        out.pass = std::isfinite(r.norm);
    } else if (which == "l2") {
        const L2BoundReport r = l2_bound_from_seminorms(src, m);
        body = report::to_json(r);
        out.pass = r.stable;
    } else if (which == "compact") {
        opts["fraction"] = o.fraction;
        body = report::to_json(compactness_indicator(src, m, o.fraction));
    } else if (which == "lp-compact") {
        opts["p"] = o.p;
        body = report::to_json(lp_compactness_probe(s, o.p));
    }
    out.doc = report::envelope("analyze_" + which, config_json(g, "analyze " + which, opts));
    out.doc["report"] = body;
    return out;
}

Output cmd_solve_elliptic(const Globals& g, const Options& o) {
    const LatticeModel m = model_of(g);
    const Symbol s = make_source(g.symbol, g.builtin_text, g)(m);
    std::mt19937_64 rng(g.seed);
    const LatticeFunction rhs = make_rhs(o.rhs, m, rng);
    EllipticOptions eo;
    if (o.method == "inverse-multiplier") eo.method = EllipticMethod::inverse_multiplier;
    else if (o.method == "parametrix") eo.method = EllipticMethod::parametrix;
    else if (o.method == "direct") eo.method = EllipticMethod::direct;
    else throw UsageError("--method must be inverse-multiplier, parametrix or direct");
    eo.parametrix_order = o.order;
    const EllipticSolution sol = solve_elliptic(s, rhs, eo);
    Output out;
    out.doc = report::envelope("solve_elliptic", config_json(g, "solve elliptic",
                                                             {{"method", o.method}, {"rhs", o.rhs}, {"tol", o.tol}, {"order", o.order}}));
    out.doc["solve"] = report::to_json(sol);
    std::ostringstream os;
    os.precision(17);
    os << "k,re,im\n";
    for (std::size_t p = 0; p < sol.f.size(); ++p) os << p << ',' << sol.f[p].real() << ',' << sol.f[p].imag() << '\n';
    out.csv = os.str();
    out.pass = sol.residual <= o.tol;
    return out;
}

Output cmd_solve_parabolic(const Globals& g, const Options& o) {
    const LatticeModel m = model_of(g);
    const Symbol s = make_source(g.symbol, g.builtin_text, g)(m);
    std::mt19937_64 rng(g.seed);
    ParabolicProblem pb{s, random_lattice_function(m, rng), {}, o.T, o.dt, ParabolicScheme::implicit_euler};
    if (o.scheme == "exact-multiplier") pb.scheme = ParabolicScheme::exact_multiplier;
    else if (o.scheme != "implicit-euler") throw UsageError("--scheme must be implicit-euler or exact-multiplier");
    if (o.source == "random") {
        const LatticeFunction g0 = random_lattice_function(m, rng);
        pb.source = [g0](double) { return g0; };
    } else if (o.source != "zero") {
        throw UsageError("--source must be zero or random");
    }
    Output out;
    out.doc = report::envelope("solve_parabolic", config_json(g, "solve parabolic",
                                                              {{"T", o.T}, {"dt", o.dt}, {"scheme", o.scheme}, {"source", o.source}}));
    const ParabolicResult r = solve_parabolic(pb, false);
    out.doc["energy"] = report::to_json(r.energy);
    // Same generator, data and step re-run at hbar = 1, 1/2, 1/4 on the same grid.
    json sweep = json::array();
    for (double h : {1.0, 0.5, 0.25}) {
        const LatticeModel mh(g.dim, h, g.points);
        std::mt19937_64 rh(g.seed);
        ParabolicProblem ph{make_source(g.symbol, g.builtin_text, g)(mh), random_lattice_function(mh, rh), {}, o.T, o.dt,
                            pb.scheme};
        if (o.source == "random") {
            const LatticeFunction g0 = random_lattice_function(mh, rh);
            ph.source = [g0](double) { return g0; };
        }
        const EnergyReport e = solve_parabolic(ph, false).energy;
        sweep.push_back({{"hbar", h}, {"C2", e.C2}, {"C", e.C}, {"C_fit", e.C_fit}, {"certified", e.certified}});
    }
    out.doc["hbar_dependence"] = sweep;
    std::ostringstream os;
    write_trajectory_csv(r, os);
    out.csv = os.str();
    out.pass = r.energy.certified;
    return out;
}

Smooth1D function_by_name(const std::string& name) {
    if (name == "plane") return plane_wave(1.0);
    if (name == "gaussian") return gaussian(1.0);
    if (name == "sin") return sine(1.0);
    if (name == "const") return constant_function(1.0);
    if (name == "affine") return affine(1.0, 0.5);
    throw UsageError("unknown function '" + name + "' (plane, gaussian, sin, const, affine)");
}

Output cmd_limit(const Globals& g, const Options& o, const std::string& which) {
    RateTable t;
    const int order = o.limit_order > 0 ? o.limit_order : (which == "compose" ? 2 : 1);
    json opts = {{"hbars", o.hbars}, {"window", o.window}, {"order", order}, {"function", o.function}};
    if (which == "diff") {
        t = difference_convergence({{function_by_name(o.function)}}, MultiIndex{order}, o.hbars, o.window);
    } else if (which == "dderiv") {
        t = rescaled_derivative_convergence({{function_by_name(o.function)}}, MultiIndex{order}, o.hbars, o.window);
    } else {
        const SeparableSymbol sigma{gaussian(1.0), plane_wave(1.0)};
        const SeparableSymbol tau{sine(0.25), constant_function(1.0)};
        t = composition_limit_study(sigma, tau, o.hbars, order, o.window);
        opts["sigma"] = sigma.x_part.name + " * " + sigma.xi_part.name;
        opts["tau"] = tau.x_part.name + " * " + tau.xi_part.name;
    }
    Output out;
    out.doc = report::envelope("limit_" + which, config_json(g, "limit " + which, opts));
    out.doc["rates"] = report::to_json(t);
    std::ostringstream os;
    write_rate_csv(t, os);
    out.csv = os.str();
    out.pass = t.exact || (std::abs(t.order - 1.0) <= 0.1 && t.r2 >= 0.99);
    return out;
}

Output cmd_demo(Globals g, const std::string& which) {
    if (g.symbol.empty() && g.builtin_text.empty()) g.builtin_text = which;
    const LatticeModel m = model_of(g);
    const SymbolSource src = make_source(g.symbol, g.builtin_text, g);
    const Symbol s = src(m);
    std::mt19937_64 rng(g.seed);
    Output out;
    out.doc = report::envelope("demo_" + which, config_json(g, "demo " + which, json::object()));
    const double mu = s.declared_class() ? s.declared_class()->mu : 0.0;
    const EllipticityReport ell = ellipticity_check(s, mu);
    out.doc["elliptic"] = ell.elliptic;
    out.doc["ellipticity"] = report::to_json(ell);

    if (which == "example1") {
        // D_j f(k) = f(k + hbar v_j) − f(k) against the direct shift.
        const LatticeFunction f = random_lattice_function(m, rng);
        const LatticeFunction a = apply(s, f);
        double gap = 0.0;
        for (std::size_t p = 0; p < m.size(); ++p) gap = std::max(gap, std::abs(a[p] - (f[m.shift(p, 0, 1)] - f[p])));
        const ExpansionResult adj = adjoint_asymptotic(s, 1);
        out.doc["shift_gap"] = gap;
        out.doc["adjoint_residual_N1"] = adj.residual_hs[0];
        out.doc["hs"] = report::to_json(hs_norm_check(s));
        out.pass = gap <= 1e-11 && adj.residual_hs[0] <= 1e-11;
    } else if (which == "example2") {
        out.doc["seminorms"] = report::to_json(seminorm_estimate(s, 1, 1));
        out.doc["kernel_decay"] = report::to_json(kernel_decay_report(s, 2));
        const HsReport hs = hs_norm_check(s);
        out.doc["hs"] = report::to_json(hs);
        out.pass = hs.gap <= 1e-10 * std::max(1.0, hs.frobenius_norm);
    } else if (which == "example3") {
        const ParametrixResult par = parametrix({s}, 0);
        const EllipticSolution sol = solve_elliptic(s, LatticeFunction::delta(m, 0), {EllipticMethod::inverse_multiplier});
        out.doc["parametrix"] = report::to_json(par);
        out.doc["solve"] = report::to_json(sol);
        out.pass = ell.elliptic && sol.residual <= 1e-10 && par.left_hs[0] <= 1e-10;
    } else if (which == "intro") {
        const EllipticSolution sol =
            solve_elliptic(s, random_lattice_function(m, rng), {EllipticMethod::inverse_multiplier});
        out.doc["solve"] = report::to_json(sol);
        out.pass = sol.residual <= 1e-10;
    }
    return out;
}

/// Split off everything after a bare "--" as key=value parameters.
std::vector<std::string> split_params(int& argc, char** argv) {
    std::vector<std::string> params;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--") {
            for (int j = i + 1; j < argc; ++j) params.emplace_back(argv[j]);
            argc = i;
            break;
        }
    }
    return params;
}

dsl::Params parse_params(const std::vector<std::string>& raw) {
    dsl::Params p;
    for (const std::string& item : raw) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("parameter '" + item + "' is not key=value");
        const std::string key = item.substr(0, eq);
        p[key] = dsl::evaluate(dsl::parse(item.substr(eq + 1)), dsl::Bindings{});
    }
    return p;
}

} // namespace

int main(int argc, char** argv) {
    Globals g;
    Options o;
    CLI::App app{"Semi-classical pseudo-difference calculus on finite lattice models"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Flat TOML/INI file with flag values (flags override it)");
    app.add_option("--dim", g.dim, "Dimension n")->capture_default_str();
    app.add_option("--hbar", g.hbar, "Lattice spacing in (0,1]")->capture_default_str();
    app.add_option("--points", g.points, "Points per axis M (even)")->capture_default_str();
    app.add_option("--symbol", g.symbol, "Symbol as a DSL expression in k1.., theta1..");
    app.add_option("--builtin", g.builtin_text, "Built-in symbol, e.g. example2(r=1,s=0)");
    app.add_option("--class", g.class_text, "Declared class mu,rho,delta for the symbol");
    app.add_option("--out", g.out, "Directory for JSON/CSV artifacts");
    app.add_option("--format", g.format, "Stdout format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();

    std::string which;
    auto* selftest = app.add_subcommand("selftest", "Fourier, difference and kernel invariants");
    auto* symbol = app.add_subcommand("symbol", "Symbol diagnostics");
    auto* symbol_check = symbol->add_subcommand("check", "Seminorm constants and ellipticity");
    symbol->require_subcommand(1);
    symbol_check->add_option("--max-alpha", o.max_alpha, "Largest |alpha| for differences in k")->capture_default_str();
    symbol_check->add_option("--max-beta", o.max_beta, "Largest |beta| for derivatives in theta")->capture_default_str();
    symbol_check->add_option("--mu", o.mu, "Ellipticity order (default: declared order or 0)");

    auto* kern = app.add_subcommand("kernel", "Kernel decay report and CSV export");
    kern->add_option("--q-max", o.q_max)->capture_default_str();
    kern->add_flag("--export", o.export_kernel, "Emit the kernel as CSV (row,col,re,im)");

    const std::map<std::string, std::string> help{
        {"compose", "sigma o tau against the composition expansion"},
        {"adjoint", "Adjoint symbol expansion"},
        {"transpose", "Transpose symbol expansion"},
        {"parametrix", "Left and right parametrix residuals by order"},
        {"hs", "Hilbert-Schmidt norm against the symbol L2 identity"},
        {"lp", "Young-type l^p bound from the kernel"},
        {"schatten", "Schatten p-norms of the kernel matrix"},
        {"garding", "Garding constants C0, C1 for the weighted form"},
        {"sharp-garding", "Sharp Garding lower bound for nonnegative symbols"},
        {"link", "Lattice quantization against the toroidal adjoint realization"},
        {"gohberg", "Distance to rank-r operators against the symbol gap"},
        {"weighted", "Boundedness between weighted l2 spaces"},
        {"l2", "l2 operator norm against the seminorm bound, across M"},
        {"compact", "Compactness indicator from the outer shell"},
        {"lp-compact", "Compactness indicator on l^p"},
        {"diff", "Difference quotients against derivatives"},
        {"dderiv", "Rescaled torus derivatives against derivatives"},
    };

    auto* calc = app.add_subcommand("calculus", "Asymptotic expansions against exact oracles");
    calc->require_subcommand(1);
    for (const char* name : {"compose", "adjoint", "transpose", "parametrix"}) {
        auto* sc = calc->add_subcommand(name, help.at(name));
        sc->add_option("--order", o.order, "Number of terms N")->capture_default_str();
        if (std::string(name) == "compose") {
            sc->add_option("--tau-symbol", o.tau_symbol, "Right factor as a DSL expression");
            sc->add_option("--tau-builtin", o.tau_builtin, "Right factor as a built-in");
        }
        if (std::string(name) == "parametrix") sc->add_option("--rule", o.rule, "complete or literal")->capture_default_str();
        sc->callback([&which, name] { which = name; });
    }

    auto* analyze = app.add_subcommand("analyze", "Norm identities and bounds");
    analyze->require_subcommand(1);
    for (const char* name :
         {"hs", "lp", "schatten", "garding", "sharp-garding", "link", "gohberg", "weighted", "l2", "compact", "lp-compact"}) {
        auto* sc = analyze->add_subcommand(name, help.at(name));
        sc->add_option("--p", o.p, "Exponent p")->capture_default_str();
        sc->add_option("--m", o.m, "Weight order m")->capture_default_str();
        sc->add_option("--s", o.s, "Weight s")->capture_default_str();
        sc->add_option("--fraction", o.fraction, "Outer-shell fraction of the box radius")->capture_default_str();
        sc->add_option("--ranks", o.ranks, "Ranks for the Gohberg distance")->capture_default_str();
        sc->callback([&which, name] { which = name; });
    }

    auto* solve = app.add_subcommand("solve", "Elliptic and parabolic solvers");
    solve->require_subcommand(1);
    auto* elliptic = solve->add_subcommand("elliptic", "Solve Op(sigma) f = g with a residual certificate");
    elliptic->add_option("--method", o.method, "inverse-multiplier, parametrix or direct")->capture_default_str();
    elliptic->add_option("--rhs", o.rhs, "delta, random or gaussian")->capture_default_str();
    elliptic->add_option("--tol", o.tol, "Residual threshold for the certificate")->capture_default_str();
    elliptic->add_option("--order", o.order, "Parametrix order")->capture_default_str();
    auto* parabolic = solve->add_subcommand("parabolic", "Evolve dw/dt = Op(sigma) w + g with an energy certificate");
    parabolic->add_option("--T", o.T, "Final time")->capture_default_str();
    parabolic->add_option("--dt", o.dt, "Time step (T must be a multiple)")->capture_default_str();
    parabolic->add_option("--scheme", o.scheme, "implicit-euler or exact-multiplier")->capture_default_str();
    parabolic->add_option("--source", o.source, "zero or random (constant in time)")->capture_default_str();

    auto* limit = app.add_subcommand("limit", "hbar -> 0 convergence studies");
    limit->require_subcommand(1);
    for (const char* name : {"diff", "dderiv", "compose"}) {
        auto* sc = limit->add_subcommand(name, name == std::string("compose") ? "Lattice composition against the Euclidean expansion" : help.at(name));
        sc->add_option("--function", o.function, "plane, gaussian, sin, const or affine")->capture_default_str();
        sc->add_option("--order", o.limit_order, "Order of alpha / beta (default 1), or N for compose (default 2)");
        sc->add_option("--hbars", o.hbars, "hbar ladder for the rate fit")->capture_default_str();
        sc->add_option("--window", o.window, "Half-width of the comparison window")->capture_default_str();
        sc->callback([&which, name] { which = name; });
    }

    auto* demo = app.add_subcommand("demo", "Worked examples end to end");
    demo->require_subcommand(1);
    for (const char* name : {"example1", "example2", "example3", "intro"}) {
        demo->add_subcommand(name)->callback([&which, name] { which = name; });
    }

    try {
        g.raw_params = split_params(argc, argv);
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        g.params = parse_params(g.raw_params);
        if (*selftest) return emit(g, "selftest", cmd_selftest(g));
        if (*symbol_check) return emit(g, "symbol_check", cmd_symbol_check(g, o));
        if (*kern) return emit(g, "kernel", cmd_kernel(g, o));
        if (*calc) return emit(g, "calculus_" + which, cmd_calculus(g, o, which));
        if (*analyze) return emit(g, "analyze_" + which, cmd_analyze(g, o, which));
        if (*elliptic) return emit(g, "solve_elliptic", cmd_solve_elliptic(g, o));
        if (*parabolic) return emit(g, "solve_parabolic", cmd_solve_parabolic(g, o));
        if (*limit) return emit(g, "limit_" + which, cmd_limit(g, o, which));
        if (*demo) return emit(g, "demo_" + which, cmd_demo(g, which));
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n' << "  " << e.source_line() << '\n';
        return kExitUsage;
    } catch (const InvalidModel& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const BadParameter& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnknownBuiltin& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnknownIdentifier& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnboundIdentifier& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "certificate failure: " << e.what() << '\n';
        return kExitCertificate;
    }
    return kExitUsage;
}

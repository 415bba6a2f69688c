#include "sclat/report.hpp"

#include "sclat/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sclat::report {

namespace {

/// JSON has no infinities; they are written as strings.
json num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

json nums(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

const char* decay_name(DecayKind k) {
    switch (k) {
    case DecayKind::measured: return "measured";
    case DecayKind::infinite: return "infinite";
    case DecayKind::compact: return "compactly_supported";
    }
    return "?";
}

const char* method_name(EllipticMethod m) {
    switch (m) {
    case EllipticMethod::inverse_multiplier: return "inverse-multiplier";
    case EllipticMethod::parametrix: return "parametrix";
    case EllipticMethod::direct: return "direct-matrix";
    }
    return "?";
}

} // namespace

json envelope(const std::string& kind, const json& config) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    j["config"] = config;
    return j;
}

json to_json(cplx z) { return json::array({num(z.real()), num(z.imag())}); }

json to_json(const SymbolClass& c) { return {{"mu", c.mu}, {"rho", c.rho}, {"delta", c.delta}}; }

json to_json(const SeminormReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"alpha", e.alpha.entries()}, {"beta", e.beta.entries()}, {"constant", num(e.constant)}});
    return {{"class", to_json(r.cls)},         {"max_alpha", r.max_alpha}, {"max_beta", r.max_beta},
            {"interior_only", r.interior_only}, {"grid", r.grid},          {"entries", entries}};
}

json to_json(const EllipticityReport& r) {
    return {{"elliptic", r.elliptic},     {"C", num(r.C)},
            {"M0", num(r.M0)},            {"mu", r.mu},
            {"box_radius", r.box_radius}, {"inside_fraction", r.inside_fraction},
            {"grid", r.grid}};
}

json to_json(const KernelDecayReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back({{"Q", row.Q}, {"C_Q", num(row.C)}});
    return {{"class", to_json(r.cls)}, {"rows", rows},   {"decay", decay_name(r.kind)},
            {"exponent", num(r.exponent)}, {"r2", num(r.r2)}, {"support_radius", r.support_radius},
            {"grid", r.grid}};
}

json to_json(const ExpansionResult& r) {
    json rows = json::array();
    for (std::size_t i = 0; i < r.partial_sums.size(); ++i)
        rows.push_back({{"N", i + 1},
                        {"residual_hs", num(r.residual_hs[i])},
                        {"residual_spectral", num(r.residual_spectral[i])},
                        {"order_drop", num(r.order_drop[i])}});
    return {{"rows", rows}};
}

json to_json(const ParametrixResult& r) {
    json rows = json::array();
    for (std::size_t i = 0; i < r.left_hs.size(); ++i)
        rows.push_back({{"N", i},
                        {"terms", r.term_counts[i]},
                        {"left_hs", num(r.left_hs[i])},
                        {"left_spectral", num(r.left_spectral[i])},
                        {"right_hs", num(r.right_hs[i])},
                        {"right_spectral", num(r.right_spectral[i])}});
    return {{"rule", r.rule == ParametrixRule::complete ? "complete" : "literal"}, {"rows", rows}};
}

json to_json(const HsReport& r) {
    return {{"symbol_norm", num(r.symbol_norm)}, {"frobenius_norm", num(r.frobenius_norm)}, {"gap", num(r.gap)}};
}

json to_json(const YoungReport& r) {
    return {{"p", num(r.p)},         {"predicted", num(r.predicted)}, {"empirical", num(r.empirical)},
            {"exact", r.exact},      {"holds", r.holds},              {"lambda", nums(r.lambda)}};
}

json to_json(const L2BoundReport& r) {
    return {{"kappa", r.kappa},          {"seminorm", num(r.seminorm)}, {"norm", num(r.norm)},
            {"norm_grown", num(r.norm_grown)}, {"ratio", num(r.ratio)}, {"stable", r.stable},
            {"grid", r.grid}};
}

json to_json(const CompactnessReport& r) {
    return {{"fraction", r.fraction}, {"d", num(r.d)}, {"d_grown", num(r.d_grown)}, {"trend", num(r.trend)}};
}

json to_json(const GohbergReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"rank", row.rank}, {"distance", num(row.distance)}, {"margin", num(row.margin)},
                        {"holds", row.holds}});
    json probes = json::array();
    for (const auto& p : r.probes) probes.push_back({{"q", p.name}, {"outer", num(p.outer)}, {"all", num(p.all)}});
    return {{"d", num(r.d)}, {"tol", r.tol}, {"holds", r.holds}, {"rows", rows}, {"probes", probes},
            {"singular_values", nums(r.singular_values)}};
}

json to_json(const SchattenReport& r) {
    json j = {{"p", r.p},
              {"bound_lhs", num(r.bound_lhs)},
              {"schatten_norm", num(r.schatten_norm)},
              {"bound_holds", r.bound_holds},
              {"singular_values", nums(r.singular_values)}};
    if (r.p == 1.0) {
        j["matrix_trace"] = to_json(r.matrix_trace);
        j["symbol_trace"] = to_json(r.symbol_trace);
        j["eigenvalue_sum"] = to_json(r.eigenvalue_sum);
    }
    return j;
}

json to_json(const GardingReport& r) {
    return {{"m", r.m},
            {"C0", num(r.C0)},
            {"C1", num(r.C1)},
            {"lambda_min", num(r.lambda_min)},
            {"certificate", num(r.certificate)},
            {"tol", num(r.tol)},
            {"verified", r.verified},
            {"bisections", r.bisections}};
}

json to_json(const SharpGardingReport& r) {
    json j = {{"m", r.m}, {"C", num(r.C)}};
    if (r.has_trend) {
        j["C_grown"] = num(r.C_grown);
        j["ratio"] = num(r.ratio);
    }
    return j;
}

json to_json(const LinkReport& r) { return {{"gap", num(r.gap)}, {"holds", r.holds}}; }

json to_json(const WeightedReport& r) {
    json j = {{"r", r.r}, {"s", r.s}, {"norm", num(r.norm)}};
    if (r.has_trend) {
        j["norm_grown"] = num(r.norm_grown);
        j["ratio"] = num(r.ratio);
    }
    return j;
}

json to_json(const LpCompactnessReport& r) {
    return {{"p", num(r.p)},
            {"omega_outer", num(r.omega_outer)},
            {"omega_max", num(r.omega_max)},
            {"decaying", r.decaying},
            {"radii", nums(r.radii)},
            {"tail_norms", nums(r.tail_norms)},
            {"omega", nums(r.omega)}};
}

json to_json(const EllipticSolution& r) {
    return {{"method", method_name(r.method)}, {"residual", num(r.residual)}, {"weighted_ratio", num(r.weighted_ratio)}};
}

json to_json(const EnergyReport& r) {
    return {{"C2", num(r.C2)},
            {"C2_origin", r.C2_origin},
            {"C", num(r.C)},
            {"C_fit", num(r.C_fit)},
            {"certified", r.certified},
            {"violating_step", r.violating_step},
            {"fit_certifies", r.fit_certifies},
            {"stepwise_stable", r.stepwise_stable},
            {"unstable_step", r.unstable_step},
            {"energy", nums(r.energy)},
            {"bound", nums(r.bound)}};
}

json to_json(const RateTable& r) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back({{"hbar", row.hbar}, {"error", num(row.error)}});
    return {{"rows", rows}, {"fitted_order", num(r.order)}, {"r2", num(r.r2)}, {"exact", r.exact},
            {"flagged", r.flagged}};
}

std::string expansion_csv(const ExpansionResult& r) {
    std::ostringstream os;
    os.precision(17);
    os << "N,residual_hs,residual_spectral,order_drop\n";
    for (std::size_t i = 0; i < r.partial_sums.size(); ++i)
        os << i + 1 << ',' << r.residual_hs[i] << ',' << r.residual_spectral[i] << ',' << r.order_drop[i] << '\n';
    return os.str();
}

std::string parametrix_csv(const ParametrixResult& r) {
    std::ostringstream os;
    os.precision(17);
    os << "N,terms,left_hs,left_spectral,right_hs,right_spectral\n";
    for (std::size_t i = 0; i < r.left_hs.size(); ++i)
        os << i << ',' << r.term_counts[i] << ',' << r.left_hs[i] << ',' << r.left_spectral[i] << ','
           << r.right_hs[i] << ',' << r.right_spectral[i] << '\n';
    return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        os << content;
        if (!os) throw Error("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, path);
}

} // namespace sclat::report

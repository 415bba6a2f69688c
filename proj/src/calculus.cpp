#include "sclat/calculus.hpp"

#include "sclat/difference.hpp"
#include "sclat/errors.hpp"
#include "sclat/simd.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <map>

namespace sclat {

namespace {

constexpr double kVanishFloor = 1e-10;

void check_order(int N_max, const char* what) {
    if (N_max < 1 || N_max > 4) throw BadParameter(std::string(what) + ": N must lie in [1, 4]");
}

double spectral_norm(const Eigen::MatrixXcd& A) {
    if (A.size() == 0) return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    return svd.singularValues()(0);
}

Symbol from_table(const LatticeModel& m, std::vector<cplx> t) { return Symbol(m, std::move(t)); }

/// Grouped terms T_i = Σ_{|α|=i} term(α), then partial sums and residuals.
template <class Term>
ExpansionResult expand(const Symbol& exact, int N_max, const SymbolClass& cls, Term term) {
    const LatticeModel& m = exact.model();
    ExpansionResult r{{}, {}, {}, {}, exact};
    std::vector<cplx> sum(m.size() * m.size(), 0.0);
    for (int order = 0; order < N_max; ++order) {
        for (const MultiIndex& alpha : multi_indices_of_order(m.dim(), order)) {
            const std::vector<cplx> t = term(alpha);
            simd::axpy(sum.data(), t.data(), 1.0 / static_cast<double>(alpha.factorial()), sum.size());
        }
        Symbol partial = from_table(m, sum);
        r.residual_hs.push_back(hs_distance(partial, exact));
        r.residual_spectral.push_back(spectral_distance(partial, exact));
        r.order_drop.push_back((cls.rho - cls.delta) * order);
        r.partial_sums.push_back(std::move(partial));
    }
    return r;
}

std::vector<cplx> d_then_delta(const Symbol& s, const MultiIndex& alpha) {
    std::vector<cplx> t = s.table();
    derivative_cols_inplace(t, s.model(), alpha, DerivativeKind::falling);
    difference_rows_inplace(t, s.model(), s.points(), alpha);
    return t;
}

} // namespace

double hs_distance(const Symbol& a, const Symbol& b) {
    require_same_model(a.model(), b.model(), "hs_distance");
    const std::size_t N = a.points();
    std::vector<cplx> d = a.table();
    simd::axpy(d.data(), b.table().data(), -1.0, d.size());
    return std::sqrt(simd::sum_abs2(d.data(), d.size()) / static_cast<double>(N));
}

double spectral_distance(const Symbol& a, const Symbol& b) {
    require_same_model(a.model(), b.model(), "spectral_distance");
    return spectral_norm(kernel_matrix(a) - kernel_matrix(b));
}

Symbol compose_exact(const Symbol& sigma, const Symbol& tau) {
    require_same_model(sigma.model(), tau.model(), "compose_exact");
    return extract_symbol({sigma.model(), kernel_matrix(sigma) * kernel_matrix(tau)});
}

namespace {

std::vector<cplx> composition_term(const Symbol& sigma, const Symbol& tau, const MultiIndex& alpha) {
    const LatticeModel& m = sigma.model();
    std::vector<cplx> ds = sigma.table();
    derivative_cols_inplace(ds, m, alpha, DerivativeKind::falling);
    std::vector<cplx> dt = tau.table();
    difference_rows_inplace(dt, m, m.size(), alpha);
    simd::mul(ds.data(), dt.data(), ds.data(), ds.size());
    return ds;
}

} // namespace

std::vector<Symbol> composition_terms(const Symbol& sigma, const Symbol& tau, int N_max) {
    require_same_model(sigma.model(), tau.model(), "composition_terms");
    if (N_max < 1) throw BadParameter("composition_terms: N must be positive");
    const LatticeModel& m = sigma.model();
    std::vector<Symbol> out;
    for (int order = 0; order < N_max; ++order) {
        std::vector<cplx> sum(m.size() * m.size(), 0.0);
        for (const MultiIndex& alpha : multi_indices_of_order(m.dim(), order)) {
            const std::vector<cplx> t = composition_term(sigma, tau, alpha);
            simd::axpy(sum.data(), t.data(), 1.0 / static_cast<double>(alpha.factorial()), sum.size());
        }
        out.emplace_back(m, std::move(sum));
    }
    return out;
}

ExpansionResult compose_asymptotic(const Symbol& sigma, const Symbol& tau, int N_max) {
    require_same_model(sigma.model(), tau.model(), "compose_asymptotic");
    check_order(N_max, "compose_asymptotic");
    return expand(compose_exact(sigma, tau), N_max, sigma.declared_class().value_or(SymbolClass{}),
                  [&](const MultiIndex& alpha) { return composition_term(sigma, tau, alpha); });
}

Symbol adjoint_exact(const Symbol& sigma) {
    return extract_symbol({sigma.model(), kernel_matrix(sigma).adjoint()});
}

ExpansionResult adjoint_asymptotic(const Symbol& sigma, int N_max) {
    check_order(N_max, "adjoint_asymptotic");
    const Symbol c = sigma.conj();
    return expand(adjoint_exact(sigma), N_max, sigma.declared_class().value_or(SymbolClass{}),
                  [&](const MultiIndex& alpha) { return d_then_delta(c, alpha); });
}

Symbol transpose_exact(const Symbol& sigma) {
    return extract_symbol({sigma.model(), kernel_matrix(sigma).transpose()});
}

ExpansionResult transpose_asymptotic(const Symbol& sigma, int N_max) {
    check_order(N_max, "transpose_asymptotic");
    const Symbol r = sigma.reflect_theta();
    return expand(transpose_exact(sigma), N_max, sigma.declared_class().value_or(SymbolClass{}),
                  [&](const MultiIndex& alpha) { return d_then_delta(r, alpha); });
}

ParametrixResult parametrix(const std::vector<Symbol>& U, int N, ParametrixRule rule) {
    if (U.empty()) throw BadParameter("parametrix: no symbol terms given");
    if (N < 0 || N > 4) throw BadParameter("parametrix: N must lie in [0, 4]");
    for (const Symbol& u : U) require_same_model(U[0].model(), u.model(), "parametrix");
    const LatticeModel& m = U[0].model();
    const std::size_t P = m.size();
    const Symbol& U0 = U[0];

    const double mu = U0.declared_class() ? U0.declared_class()->mu : 0.0;
    const EllipticityReport ell = ellipticity_check(U0, mu);
    if (!ell.elliptic)
        throw NotElliptic("parametrix: leading symbol fails the ellipticity check (M0 = " + std::to_string(ell.M0) +
                          ", box radius " + std::to_string(ell.box_radius) + ")");
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t t = 0; t < P; ++t)
            if (std::abs(U0(p, t)) < kVanishFloor)
                throw SymbolVanishesOnGrid("parametrix: |U0| < 1e-10", p, t);

    ParametrixResult res;
    res.rule = rule;
    std::vector<cplx> inv_u0(P * P);
    for (std::size_t i = 0; i < P * P; ++i) inv_u0[i] = 1.0 / U0.table()[i];
    res.V.push_back(Symbol(m, inv_u0));
    res.term_counts.push_back(1);

    // Δ^γ U_l is reused across levels.
    std::map<std::pair<std::size_t, MultiIndex>, std::vector<cplx>> delta_cache;
    auto delta_u = [&](std::size_t l, const MultiIndex& g) -> const std::vector<cplx>& {
        auto key = std::make_pair(l, g);
        auto it = delta_cache.find(key);
        if (it != delta_cache.end()) return it->second;
        std::vector<cplx> t = U[l].table();
        difference_rows_inplace(t, m, P, g);
        return delta_cache.emplace(key, std::move(t)).first->second;
    };

    for (int level = 1; level <= N; ++level) {
        std::vector<cplx> acc(P * P, 0.0);
        int count = 0;
        for (int j = 0; j < level; ++j) {
            const int l_max = rule == ParametrixRule::complete ? level - j : std::min(level - 1, level - j - 1);
            for (int l = 0; l <= l_max; ++l) {
                if (static_cast<std::size_t>(l) >= U.size()) break;
                for (const MultiIndex& g : multi_indices_of_order(m.dim(), level - j - l)) {
                    std::vector<cplx> dv = res.V[static_cast<std::size_t>(j)].table();
                    derivative_cols_inplace(dv, m, g, DerivativeKind::falling);
                    simd::fma_scaled(acc.data(), dv.data(), delta_u(static_cast<std::size_t>(l), g).data(),
                                     1.0 / static_cast<double>(g.factorial()), acc.size());
                    ++count;
                }
            }
        }
        simd::mul(acc.data(), inv_u0.data(), acc.data(), acc.size());
        for (auto& v : acc) v = -v;
        res.V.push_back(Symbol(m, std::move(acc)));
        res.term_counts.push_back(count);
    }

    Symbol u_sum = U[0];
    for (std::size_t l = 1; l < U.size(); ++l) u_sum = u_sum + U[l];
    const Eigen::MatrixXcd KU = kernel_matrix(u_sum);
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(KU.rows(), KU.cols());
    Symbol v_sum = res.V[0];
    for (int level = 0; level <= N; ++level) {
        if (level > 0) v_sum = v_sum + res.V[static_cast<std::size_t>(level)];
        const Eigen::MatrixXcd KV = kernel_matrix(v_sum);
        const Eigen::MatrixXcd left = KV * KU - I;
        const Eigen::MatrixXcd right = KU * KV - I;
        res.left_hs.push_back(left.norm());
        res.right_hs.push_back(right.norm());
        res.left_spectral.push_back(spectral_norm(left));
        res.right_spectral.push_back(spectral_norm(right));
    }
    return res;
}

} // namespace sclat

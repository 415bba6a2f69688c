#include "sclat/symbol.hpp"

#include "sclat/difference.hpp"
#include "sclat/errors.hpp"
#include "sclat/simd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sclat {

Symbol::Symbol(const LatticeModel& model, std::vector<cplx> table, std::optional<SymbolClass> cls)
    : model_(model), table_(std::move(table)), class_(cls) {
    if (table_.size() != model_.size() * model_.size())
        throw ModelMismatch("symbol: table size differs from M^n x M^n");
    if (class_ && (class_->delta < 0.0 || class_->rho < 0.0))
        throw BadParameter("symbol: declared class needs rho >= 0 and delta >= 0");
}

Symbol Symbol::constant(const LatticeModel& model, cplx c) {
    return Symbol(model, std::vector<cplx>(model.size() * model.size(), c));
}

Symbol Symbol::from_function(const LatticeModel& model, const std::function<cplx(std::size_t, std::size_t)>& f) {
    const std::size_t N = model.size();
    std::vector<cplx> t(N * N);
    for (std::size_t p = 0; p < N; ++p)
        for (std::size_t q = 0; q < N; ++q) t[p * N + q] = f(p, q);
    return Symbol(model, std::move(t));
}

Symbol Symbol::multiplier(const TorusFunction& b) {
    const std::size_t N = b.model.size();
    std::vector<cplx> t(N * N);
    for (std::size_t p = 0; p < N; ++p) std::copy(b.values.begin(), b.values.end(), t.begin() + static_cast<std::ptrdiff_t>(p * N));
    return Symbol(b.model, std::move(t));
}

Symbol Symbol::k_only(const LatticeFunction& a) {
    const std::size_t N = a.model.size();
    std::vector<cplx> t(N * N);
    for (std::size_t p = 0; p < N; ++p) std::fill_n(t.begin() + static_cast<std::ptrdiff_t>(p * N), N, a[p]);
    return Symbol(a.model, std::move(t));
}

Symbol Symbol::with_class(SymbolClass cls) const { return Symbol(model_, table_, cls); }

bool Symbol::is_theta_only() const {
    const std::size_t N = model_.size();
    for (std::size_t p = 1; p < N; ++p)
        if (!std::equal(row(p), row(p) + N, row(0))) return false;
    return true;
}

bool Symbol::is_k_only() const {
    const std::size_t N = model_.size();
    for (std::size_t p = 0; p < N; ++p) {
        const cplx* r = row(p);
        for (std::size_t t = 1; t < N; ++t)
            if (r[t] != r[0]) return false;
    }
    return true;
}

LatticeFunction Symbol::column(std::size_t t) const {
    LatticeFunction f(model_);
    for (std::size_t p = 0; p < model_.size(); ++p) f[p] = (*this)(p, t);
    return f;
}

TorusFunction Symbol::row_function(std::size_t p) const {
    return TorusFunction(model_, std::vector<cplx>(row(p), row(p) + model_.size()));
}

Symbol Symbol::conj() const {
    std::vector<cplx> t(table_.size());
    std::transform(table_.begin(), table_.end(), t.begin(), [](cplx v) { return std::conj(v); });
    return Symbol(model_, std::move(t), class_);
}

Symbol Symbol::reflect_theta() const {
    const std::size_t N = model_.size();
    std::vector<cplx> t(table_.size());
    for (std::size_t p = 0; p < N; ++p)
        for (std::size_t q = 0; q < N; ++q) t[p * N + q] = (*this)(p, model_.negate(q));
    return Symbol(model_, std::move(t), class_);
}

Symbol Symbol::operator+(const Symbol& o) const {
    require_same_model(model_, o.model_, "symbol +");
    std::vector<cplx> t(table_);
    simd::axpy(t.data(), o.table_.data(), 1.0, t.size());
    return Symbol(model_, std::move(t));
}

Symbol Symbol::operator-(const Symbol& o) const {
    require_same_model(model_, o.model_, "symbol -");
    std::vector<cplx> t(table_);
    simd::axpy(t.data(), o.table_.data(), -1.0, t.size());
    return Symbol(model_, std::move(t));
}

Symbol Symbol::operator*(const Symbol& o) const {
    require_same_model(model_, o.model_, "symbol *");
    std::vector<cplx> t(table_.size());
    simd::mul(table_.data(), o.table_.data(), t.data(), t.size());
    return Symbol(model_, std::move(t));
}

Symbol Symbol::operator*(cplx c) const {
    std::vector<cplx> t(table_);
    for (auto& v : t) v *= c;
    return Symbol(model_, std::move(t));
}

double Symbol::max_abs() const { return simd::max_abs(table_.data(), table_.size()); }

Amplitude::Amplitude(const LatticeModel& model, std::size_t memory_budget_bytes) : model_(model), n_(model.size()) {
    const long double bytes = static_cast<long double>(n_) * n_ * n_ * sizeof(cplx);
    if (bytes > static_cast<long double>(memory_budget_bytes))
        throw MemoryBudgetExceeded("amplitude: M^{3n} table needs " + std::to_string(static_cast<double>(bytes)) +
                                   " bytes, budget is " + std::to_string(memory_budget_bytes));
    table_.resize(n_ * n_ * n_);
}

Amplitude Amplitude::from_function(const LatticeModel& model,
                                   const std::function<cplx(std::size_t, std::size_t, std::size_t)>& f,
                                   std::size_t memory_budget_bytes) {
    Amplitude a(model, memory_budget_bytes);
    const std::size_t N = model.size();
    for (std::size_t p = 0; p < N; ++p)
        for (std::size_t q = 0; q < N; ++q)
            for (std::size_t t = 0; t < N; ++t) a.at(p, q, t) = f(p, q, t);
    return a;
}

// ---- seminorms ---------------------------------------------------------------

double SeminormReport::constant(const MultiIndex& alpha, const MultiIndex& beta) const {
    for (const auto& e : entries)
        if (e.alpha == alpha && e.beta == beta) return e.constant;
    throw BadParameter("seminorm report: pair " + alpha.str() + "," + beta.str() + " was not scanned");
}

double SeminormReport::max_constant() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.constant);
    return m;
}

SeminormReport seminorm_estimate(const Symbol& sigma, int max_alpha, int max_beta, bool interior_only) {
    if (!sigma.declared_class())
        throw MissingClassDeclaration("seminorm_estimate: the symbol carries no declared (mu, rho, delta)");
    if (max_alpha < 0 || max_beta < 0) throw BadParameter("seminorm_estimate: orders must be nonnegative");
    const SymbolClass cls = *sigma.declared_class();
    const LatticeModel& m = sigma.model();
    const std::size_t N = m.size();
    const int n = m.dim();
    const int half = m.points_per_axis() / 2;

    SeminormReport rep;
    rep.cls = cls;
    rep.max_alpha = max_alpha;
    rep.max_beta = max_beta;
    rep.interior_only = interior_only;
    rep.grid = m.describe();

    for (const MultiIndex& alpha : multi_indices_up_to(n, max_alpha)) {
        std::vector<cplx> diffed = sigma.table();
        difference_rows_inplace(diffed, m, N, alpha);
        std::vector<char> keep(N, 1);
        if (interior_only) {
            for (std::size_t p = 0; p < N; ++p)
                for (int j = 0; j < n; ++j)
                    if (m.index(p, j) + alpha[j] > half - 1) keep[p] = 0;
        }
        for (const MultiIndex& beta : multi_indices_up_to(n, max_beta)) {
            std::vector<cplx> t = diffed;
            derivative_cols_inplace(t, m, beta, DerivativeKind::falling);
            const double expo = -(cls.mu - cls.rho * alpha.order() + cls.delta * beta.order());
            double c = 0.0;
            for (std::size_t p = 0; p < N; ++p) {
                if (!keep[p]) continue;
                const double w = std::pow(1.0 + m.abs_k(p), expo);
                c = std::max(c, w * simd::max_abs(&t[p * N], N));
            }
            rep.entries.push_back({alpha, beta, c});
        }
    }
    return rep;
}

EllipticityReport ellipticity_check(const Symbol& sigma, double mu) {
    const LatticeModel& m = sigma.model();
    const std::size_t N = m.size();
    EllipticityReport rep;
    rep.mu = mu;
    rep.box_radius = m.box_radius();
    rep.grid = m.describe() + " (certificate over grid points only)";

    std::vector<std::pair<double, double>> ratio(N);  // (|k|, min_θ |σ| / (1+|k|)^μ)
    double largest = 0.0;
    for (std::size_t p = 0; p < N; ++p) {
        double mn = std::numeric_limits<double>::infinity();
        const cplx* r = sigma.row(p);
        for (std::size_t t = 0; t < N; ++t) mn = std::min(mn, std::abs(r[t]));
        const double v = mn / std::pow(1.0 + m.abs_k(p), mu);
        ratio[p] = {m.abs_k(p), v};
        largest = std::max(largest, v);
    }
    std::sort(ratio.begin(), ratio.end());
    // tail[i] = min of ratio over entries i.. (all radii ≥ ratio[i].first)
    std::vector<double> tail(N);
    double run = std::numeric_limits<double>::infinity();
    for (std::size_t i = N; i-- > 0;) {
        run = std::min(run, ratio[i].second);
        tail[i] = run;
    }
    const double floor = 1e-12 * largest;
    rep.M0 = m.box_radius();
    for (std::size_t i = 0; i < N; ++i) {
        if (i > 0 && ratio[i].first == ratio[i - 1].first) continue;
        if (tail[i] > floor && largest > 0.0) {
            rep.M0 = ratio[i].first;
            rep.C = tail[i];
            break;
        }
    }
    rep.elliptic = rep.C > 0.0 && rep.M0 < rep.inside_fraction * rep.box_radius;
    return rep;
}

Symbol asymptotic_partial_sum(const std::vector<Symbol>& symbols, const std::vector<double>& orders, int N) {
    if (symbols.empty() || symbols.size() != orders.size())
        throw BadParameter("asymptotic_partial_sum: need one order per symbol");
    if (N < 1 || static_cast<std::size_t>(N) > symbols.size())
        throw BadParameter("asymptotic_partial_sum: N must lie in [1, number of symbols]");
    for (std::size_t j = 1; j < orders.size(); ++j)
        if (!(orders[j] < orders[j - 1]))
            throw NonDecreasingOrders("asymptotic_partial_sum: orders must be strictly decreasing");
    Symbol sum = symbols[0];
    for (int j = 1; j < N; ++j) sum = sum + symbols[static_cast<std::size_t>(j)];
    SymbolClass cls = symbols[0].declared_class().value_or(SymbolClass{});
    cls.mu = orders[0];
    return sum.with_class(cls);
}

} // namespace sclat

#pragma once

#include "sclat/lattice.hpp"
#include "sclat/multi_index.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sclat {

/// Declared class S^μ_{ρ,δ} of a symbol (a user assertion, not a proof).
struct SymbolClass {
    double mu = 0.0;
    double rho = 1.0;
    double delta = 0.0;
};

/// Tabulated symbol σ(k,θ) on box × grid, row-major: entry (p, t) at p·Mⁿ + t.
class Symbol {
public:
    Symbol(const LatticeModel& model, std::vector<cplx> table, std::optional<SymbolClass> cls = std::nullopt);

    static Symbol constant(const LatticeModel& model, cplx c);
    /// Tabulate f(p, t) over box point p and grid point t.
    static Symbol from_function(const LatticeModel& model, const std::function<cplx(std::size_t, std::size_t)>& f);
    /// θ-only symbol b(θ).
    static Symbol multiplier(const TorusFunction& b);
    /// k-only symbol a(k).
    static Symbol k_only(const LatticeFunction& a);

    const LatticeModel& model() const noexcept { return model_; }
    std::size_t points() const noexcept { return model_.size(); }
    const std::vector<cplx>& table() const noexcept { return table_; }
    cplx operator()(std::size_t p, std::size_t t) const { return table_[p * model_.size() + t]; }
    const cplx* row(std::size_t p) const { return table_.data() + p * model_.size(); }

    const std::optional<SymbolClass>& declared_class() const noexcept { return class_; }
    Symbol with_class(SymbolClass cls) const;

    /// True when σ does not depend on k (all rows identical).
    bool is_theta_only() const;
    /// True when σ does not depend on θ (every row constant).
    bool is_k_only() const;

    /// σ(·, t) as a lattice function, σ(p, ·) as a torus function.
    LatticeFunction column(std::size_t t) const;
    TorusFunction row_function(std::size_t p) const;

    Symbol conj() const;
    /// σ(k, −θ) using the grid's negation.
    Symbol reflect_theta() const;

    Symbol operator+(const Symbol& o) const;
    Symbol operator-(const Symbol& o) const;
    /// Pointwise product.
    Symbol operator*(const Symbol& o) const;
    Symbol operator*(cplx c) const;

    /// max |σ| over box × grid.
    double max_abs() const;

private:
    LatticeModel model_;
    std::vector<cplx> table_;
    std::optional<SymbolClass> class_;
};

/// Lazily tabulated symbol: a closed form that can be sampled on any model.
using SymbolSource = std::function<Symbol(const LatticeModel&)>;

/// Amplitude a(k,l,θ) on box × box × grid; entry (p, q, t) at (p·Mⁿ + q)·Mⁿ + t.
class Amplitude {
public:
    /// Throws MemoryBudgetExceeded when M^{3n} complex entries exceed the budget.
    explicit Amplitude(const LatticeModel& model, std::size_t memory_budget_bytes = std::size_t{1} << 30);

    /// a(k,l,θ) = f(p,q,t).
    static Amplitude from_function(const LatticeModel& model,
                                   const std::function<cplx(std::size_t, std::size_t, std::size_t)>& f,
                                   std::size_t memory_budget_bytes = std::size_t{1} << 30);

    const LatticeModel& model() const noexcept { return model_; }
    cplx& at(std::size_t p, std::size_t q, std::size_t t) { return table_[(p * n_ + q) * n_ + t]; }
    cplx at(std::size_t p, std::size_t q, std::size_t t) const { return table_[(p * n_ + q) * n_ + t]; }
    const std::vector<cplx>& table() const noexcept { return table_; }
    std::vector<cplx>& table() noexcept { return table_; }

private:
    LatticeModel model_;
    std::size_t n_;
    std::vector<cplx> table_;
};

// ---- seminorms and ellipticity ----------------------------------------------

struct SeminormEntry {
    MultiIndex alpha;
    MultiIndex beta;
    double constant = 0.0;
};

struct SeminormReport {
    SymbolClass cls;
    int max_alpha = 0;
    int max_beta = 0;
    bool interior_only = true;
    std::vector<SeminormEntry> entries;
    std::string grid;  ///< model description

    /// Constant for (α, β); throws BadParameter if not scanned.
    double constant(const MultiIndex& alpha, const MultiIndex& beta) const;
    /// Largest constant over all scanned pairs.
    double max_constant() const;
};

/// Measured constants C_{α,β} = max |D^{(β)} Δ^α σ| (1+|k|)^{−(μ−ρ|α|+δ|β|)}.
///
/// With `interior_only` the maximum skips box points whose forward stencil
/// k, k+ℏv_j, …, k+ℏα wraps around the box: the periodic seam is an artifact
/// of the finite model, not a property of σ. Throws MissingClassDeclaration.
SeminormReport seminorm_estimate(const Symbol& sigma, int max_alpha, int max_beta, bool interior_only = true);

struct EllipticityReport {
    bool elliptic = false;
    double C = 0.0;          ///< |σ| ≥ C(1+|k|)^μ for |k| ≥ M0 on the grid
    double M0 = 0.0;
    double mu = 0.0;
    double box_radius = 0.0;
    double inside_fraction = 0.5;  ///< M0 must lie below this fraction of the box radius
    std::string grid;
};

/// Smallest radius M0 past which σ stays away from zero relative to (1+|k|)^μ,
/// and the best constant C on that region.
EllipticityReport ellipticity_check(const Symbol& sigma, double mu);

/// Σ_{j<N} σ_j for symbols with strictly decreasing orders; declared order μ₀.
Symbol asymptotic_partial_sum(const std::vector<Symbol>& symbols, const std::vector<double>& orders, int N);

// ---- built-ins ---------------------------------------------------------------

/// Parsed form of `name(args)`, e.g. "example2(r=1, s=0, a=1, b=2, j=1)".
struct BuiltinSpec {
    std::string name;
    std::map<std::string, cplx> values;  ///< numeric parameters
    std::string expr;                    ///< multiplier(expr) body
};

/// Parse a built-in reference. Positional arguments follow the documented
/// parameter order; values are constant DSL expressions (e.g. a=2+i).
BuiltinSpec parse_builtin(std::string_view text);

/// Names and parameter lists of all built-ins, in documentation order.
const std::vector<std::pair<std::string, std::vector<std::string>>>& builtin_catalog();

/// Tabulate a built-in symbol; throws UnknownBuiltin, BadParameter.
Symbol builtin(const BuiltinSpec& spec, const LatticeModel& model);
Symbol builtin(std::string_view text, const LatticeModel& model);

/// A DSL expression that tabulates to the same table as the built-in.
std::string builtin_dsl_twin(const BuiltinSpec& spec, int n);

} // namespace sclat

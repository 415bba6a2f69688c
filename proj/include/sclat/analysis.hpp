#pragma once

#include "sclat/quantize.hpp"

#include <cstdint>
#include <vector>

namespace sclat {

struct HsReport {
    double symbol_norm = 0.0;     ///< (Σ_k M^{−n} Σ_θ |σ|²)^{1/2}
    double frobenius_norm = 0.0;  ///< of kernel(σ)
    double gap = 0.0;
};
HsReport hs_norm_check(const Symbol& sigma);

struct YoungReport {
    double p = 2.0;
    std::vector<double> lambda;  ///< λ(l) = max_k |κ(k,l)|, indexed like box points
    double predicted = 0.0;      ///< ‖λ‖_{ℓ¹}
    double empirical = 0.0;      ///< exact norm for p ∈ {1, 2, ∞}, else best probe ratio
    bool exact = false;          ///< whether `empirical` is the exact operator norm
    bool holds = false;          ///< empirical ≤ predicted + 1e−9
};
/// Young bound for Op(σ) on ℓᵖ; p = +∞ allowed. Non-exact p use `probes`
/// random vectors plus all deltas.
YoungReport lp_bound_young(const Symbol& sigma, double p, std::uint64_t seed = 1, int probes = 64);

struct L2BoundReport {
    int kappa = 0;               ///< ⌊n/2⌋ + 1
    double seminorm = 0.0;       ///< max_{|α|≤κ} sup |D^{(α)} σ| on the base model
    double norm = 0.0;           ///< spectral norm on the base model
    double norm_grown = 0.0;     ///< same on the model with 2M points
    double ratio = 0.0;
    bool stable = false;         ///< ratio ≤ 1.1
    std::string grid;
};
L2BoundReport l2_bound_from_seminorms(const SymbolSource& source, const LatticeModel& model);

struct CompactnessReport {
    double fraction = 0.75;
    double d = 0.0;        ///< max_{|k| ≥ fraction·R} max_θ |σ|
    double d_grown = 0.0;  ///< same on the model with 2M points
    double trend = 0.0;    ///< d_grown − d
};
/// Outer-shell proxy of limsup_{|k|→∞} max_θ |σ(k,θ)| for one model.
double compactness_estimate(const Symbol& sigma, double fraction = 0.75);
CompactnessReport compactness_indicator(const SymbolSource& source, const LatticeModel& model, double fraction = 0.75);

struct GohbergRow {
    int rank = 0;
    double distance = 0.0;  ///< s_{rank+1}
    double margin = 0.0;    ///< distance − (d − tol)
    bool holds = false;
};
struct GohbergProbe {
    std::string name;    ///< e.g. "exp(2*pi*i*theta1) - 1"
    double outer = 0.0;  ///< max |Δ_q σ| on the outer shell
    double all = 0.0;    ///< max |Δ_q σ| on the box
};
struct GohbergReport {
    double d = 0.0;
    double tol = 1e-6;
    std::vector<double> singular_values;
    std::vector<GohbergRow> rows;
    std::vector<GohbergProbe> probes;  ///< finite stand-in for the hypothesis on all q with q(0) = 0
    bool holds = false;
};
GohbergReport gohberg_gap(const Symbol& sigma, const std::vector<int>& ranks, double fraction = 0.75,
                          double trend_correction = 0.0);

struct SchattenReport {
    double p = 1.0;
    double bound_lhs = 0.0;       ///< Σ_k ‖σ(k,·)‖^p_{L²(grid)}
    double schatten_norm = 0.0;   ///< (Σ s_j^p)^{1/p}
    bool bound_holds = false;     ///< schatten_norm^p ≤ bound_lhs (1 + 1e−9)
    std::vector<double> singular_values;
    // p = 1 only
    cplx matrix_trace = 0.0;
    cplx symbol_trace = 0.0;      ///< Σ_k grid average of σ(k,·)
    cplx eigenvalue_sum = 0.0;
};
SchattenReport schatten_report(const Symbol& sigma, double p);

struct GardingReport {
    double m = 0.0;
    double C0 = 0.0;
    double C1 = 0.0;
    double lambda_min = 0.0;     ///< smallest eigenvalue of W^{−1/2} H W^{−1/2}
    double certificate = 0.0;    ///< λ_min(H − C0 W + C1 I), must be ≥ −tol
    double tol = 0.0;
    bool verified = false;
    int bisections = 0;
};
/// Re(Pg,g) ≥ C0‖g‖²_{ℓ²_m} − C1‖g‖² certified on the eigenbasis of the
/// Hermitian part H of kernel(σ) against W = diag((1+|k|)^{2m}).
/// If the weighted form is positive definite C0 = λ_min and C1 = 0; otherwise
/// C0 is half the median positive weighted eigenvalue and C1 the exact deficit.
/// Throws FormUnboundedBelow when no weighted eigenvalue is positive.
GardingReport garding_constants(const Symbol& sigma, double m);

struct SharpGardingReport {
    double m = 0.0;
    double C = 0.0;  ///< smallest C ≥ 0 with Re(Pg,g) ≥ −C‖g‖²_{ℓ²_{(m−1)/2}}
    double C_grown = 0.0;
    double ratio = 0.0;
    bool has_trend = false;
};
/// Throws NotPointwiseNonnegative unless σ ≥ 0 on box × grid.
SharpGardingReport sharp_garding_check(const Symbol& sigma, double m);
/// Adds the value on the model with 2M points.
SharpGardingReport sharp_garding_trend(const SymbolSource& source, const LatticeModel& model, double m);

struct LinkReport {
    double gap = 0.0;  ///< spectral norm of kernel(σ) − F⁻¹ Op_T(τ)* F
    bool holds = false;
};
/// Builds τ(θ, k̄) = conj(σ(−ℏk̄, θ)) and compares both realizations.
LinkReport link_check(const Symbol& sigma);

struct WeightedReport {
    double r = 0.0;
    double s = 0.0;
    double norm = 0.0;         ///< ‖Op(σ)‖ from ℓ²_s to ℓ²_{s−r}
    double norm_grown = 0.0;
    double ratio = 0.0;
    bool has_trend = false;
};
/// r is the declared order; throws MissingClassDeclaration.
WeightedReport weighted_bound_check(const Symbol& sigma, double s);
WeightedReport weighted_bound_trend(const SymbolSource& source, const LatticeModel& model, double s);

struct LpCompactnessReport {
    double p = 2.0;
    std::vector<double> omega;  ///< ω(k) = max_l |κ(k,l)| / λ(l)
    double omega_outer = 0.0;   ///< max ω on the outer shell |k| ≥ 0.75 R
    double omega_max = 0.0;
    bool decaying = false;      ///< omega_outer ≤ ½ omega_max
    std::vector<double> radii;
    /// ‖Op(σ) − Op(σ·1_{|k|≤r})‖ on ℓᵖ per radius: exact for p ∈ {1, 2, ∞},
    /// the Young bound of the difference otherwise.
    std::vector<double> tail_norms;
};
LpCompactnessReport lp_compactness_probe(const Symbol& sigma, double p);

/// Exact ℓᵖ operator norm of a matrix for p ∈ {1, 2, ∞}; BadParameter otherwise.
double exact_lp_norm(const Eigen::MatrixXcd& K, double p);

/// The model with the same n, ℏ and twice the points per axis.
LatticeModel grown(const LatticeModel& m);

} // namespace sclat

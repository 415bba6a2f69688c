#pragma once

#include "sclat/quantize.hpp"

#include <vector>

namespace sclat {

/// Partial sums of an asymptotic expansion, each measured against the exact
/// finite-model oracle.
struct ExpansionResult {
    std::vector<Symbol> partial_sums;        ///< index i holds the sum of terms with |α| ≤ i (N = i+1)
    std::vector<double> residual_hs;         ///< ‖Op(partial) − Op(exact)‖_HS
    std::vector<double> residual_spectral;   ///< same in operator 2-norm
    std::vector<double> order_drop;          ///< declared order drop (ρ−δ)|α| of the |α| = i terms
    Symbol exact;
};

/// extract_symbol(K_σ K_τ).
Symbol compose_exact(const Symbol& sigma, const Symbol& tau);
/// Grouped expansion terms: entry i is Σ_{|α|=i} (1/α!) D^{(α)}_θ σ · Δ^α_k τ, i < N_max.
std::vector<Symbol> composition_terms(const Symbol& sigma, const Symbol& tau, int N_max);
/// ς_N = Σ_{|α|<N} (1/α!) D^{(α)}_θ σ · Δ^α_k τ for N = 1…N_max (N_max ≤ 4).
ExpansionResult compose_asymptotic(const Symbol& sigma, const Symbol& tau, int N_max);

/// extract_symbol(K_σ^*), the ℓ² adjoint for (f,g) = Σ f conj(g).
Symbol adjoint_exact(const Symbol& sigma);
/// Σ_{|α|<N} (1/α!) Δ^α_k D^{(α)}_θ conj σ.
ExpansionResult adjoint_asymptotic(const Symbol& sigma, int N_max);

/// extract_symbol(K_σ^T), the transpose for the bilinear pairing Σ f g.
Symbol transpose_exact(const Symbol& sigma);
/// Σ_{|α|<N} (1/α!) Δ^α_k D^{(α)}_θ σ(k, −θ).
ExpansionResult transpose_asymptotic(const Symbol& sigma, int N_max);

/// Hilbert–Schmidt and spectral norm of Op(a) − Op(b).
double hs_distance(const Symbol& a, const Symbol& b);
double spectral_distance(const Symbol& a, const Symbol& b);

/// Range of the parametrix recursion.
///
/// `complete` collects every term of total order N:
///   V_N = −(1/U₀) Σ_{j<N} Σ_{l=0}^{N−j} Σ_{|γ|=N−j−l} (1/γ!) D^{(γ)}V_j Δ^γ U_l.
/// `literal` keeps j, l < N and |γ| ≥ 1 only. The two agree when U has a single term.
enum class ParametrixRule { complete, literal };

struct ParametrixResult {
    std::vector<Symbol> V;           ///< V_0 … V_N
    std::vector<int> term_counts;    ///< number of (j, l, γ) terms used for V_N′
    std::vector<double> left_hs;     ///< ‖Op(Σ_{j≤N′} V_j) Op(ΣU) − I‖_HS, N′ = 0…N
    std::vector<double> left_spectral;
    std::vector<double> right_hs;    ///< ‖Op(ΣU) Op(Σ_{j≤N′} V_j) − I‖_HS
    std::vector<double> right_spectral;
    ParametrixRule rule = ParametrixRule::complete;
};

/// Parametrix of Op(U₀ + U₁ + …). Requires U₀ elliptic (NotElliptic) and
/// |U₀| ≥ 1e−10 on the whole grid (SymbolVanishesOnGrid). The ellipticity
/// order is the declared μ of U₀, or 0.
ParametrixResult parametrix(const std::vector<Symbol>& U, int N, ParametrixRule rule = ParametrixRule::complete);

} // namespace sclat

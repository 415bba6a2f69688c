#pragma once

#include "sclat/lattice.hpp"
#include "sclat/multi_index.hpp"

#include <vector>

namespace sclat {

enum class DerivativeKind { falling, plain };

/// Δ^α_ℏ f with Δ_{ℏ,j} g(k) = (g(k+ℏv_j) − g(k))/ℏ, shifts wrapped on the box.
LatticeFunction forward_difference(const LatticeFunction& f, const MultiIndex& alpha);

/// Fourier multiplier of Δ^α_ℏ: ℏ^{−|α|} Π_j (e^{2πiθ_j} − 1)^{α_j} on the grid.
TorusFunction diff_multiplier(const MultiIndex& alpha, const LatticeModel& model);

/// D^β_{ℏ,θ} (plain) or D^{(β)}_{ℏ,θ} (falling), applied spectrally.
///
/// On the mode e^{2πi j·θ}, with j_i taken in [−M/2, M/2), plain multiplies
/// by ℏ^{|β|} Π j_i^{β_i} and falling by ℏ^{|β|} Π j_i(j_i−1)…(j_i−β_i+1).
TorusFunction derivative_D(const TorusFunction& g, const MultiIndex& beta, DerivativeKind kind);

/// Δ_{ℏ,q} g = ℏ^{−1} F^{−1}(q · F g), the q-difference in multiplier form.
LatticeFunction generalized_difference(const TorusFunction& q, const LatticeFunction& g);
/// The same operator as the periodic convolution ℏ^{−1} (g ∗ F^{−1}q) summed directly.
LatticeFunction generalized_difference_convolution(const TorusFunction& q, const LatticeFunction& g);

/// Result of the toroidal Taylor recursion on a one-dimensional model.
struct TaylorExpansion {
    std::vector<cplx> coefficients;          ///< c_j = f_j(0), j < N
    TorusFunction remainder;                 ///< f_N
    std::vector<std::size_t> branch_points;  ///< grid points where the divisor vanishes
};

/// The divisor e^{2πiθ/ℏ} − 1 of the toroidal Taylor expansion.
cplx taylor_divisor(double theta, double hbar);

/// Toroidal Taylor expansion f = Σ_{j<N} δ^j c_j + δ^N f_N with δ = taylor_divisor.
///
/// f_{j+1} = (f_j − f_j(0))/δ off the zeros of δ and D_{ℏ,θ} f_j on them.
/// With `strict`, more than one grid zero raises DivisorSingularity instead
/// of being reported in `branch_points`.
TaylorExpansion toroidal_taylor(const TorusFunction& f, int N, bool strict = false);

// ---- table forms -----------------------------------------------------------
// Symbol-like tables are stored row-major: entry (p, c) at p·cols + c.

/// Apply Δ^α along the first (lattice) index of a [Mⁿ][cols] table.
void difference_rows_inplace(std::vector<cplx>& table, const LatticeModel& model, std::size_t cols,
                             const MultiIndex& alpha);
/// Apply D^β along the last (grid) index of a [rows][Mⁿ] table.
void derivative_cols_inplace(std::vector<cplx>& table, const LatticeModel& model, const MultiIndex& beta,
                             DerivativeKind kind);
/// Per-mode factors of D^β (index = grid digit layout, mode j in [−M/2, M/2)).
std::vector<double> derivative_factors(const LatticeModel& model, const MultiIndex& beta, DerivativeKind kind);

} // namespace sclat

#pragma once

#include "sclat/lattice.hpp"
#include "sclat/multi_index.hpp"

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sclat {

/// Closed-form function of one real variable with exact derivatives.
struct Smooth1D {
    std::string name;
    std::function<cplx(int order, double x)> eval;  ///< order-th derivative at x
    double frequency = 0.0;  ///< for plane waves and sines: ν in e^{2πiνx}; 0 otherwise
};

Smooth1D plane_wave(double nu);          ///< e^{2πiνx}
Smooth1D gaussian(double a);             ///< e^{−ax²}
Smooth1D sine(double nu);                ///< sin(2πνx)
Smooth1D constant_function(cplx c);
Smooth1D affine(double slope, double offset);

/// Product f(x) = Π_j f_j(x_j) on ℝⁿ, n = number of factors.
struct SmoothFunction {
    std::vector<Smooth1D> factors;

    int dim() const noexcept { return static_cast<int>(factors.size()); }
    /// ∂^α f(x).
    cplx derivative(const MultiIndex& alpha, std::span<const double> x) const;
    std::string name() const;
};

struct RateRow {
    double hbar = 0.0;
    double error = 0.0;
};

/// Errors per ℏ and the fitted order of error ~ ℏ^order.
struct RateTable {
    std::vector<RateRow> rows;
    double order = 0.0;
    double r2 = 0.0;
    bool exact = false;    ///< every error ≤ 1e−12: no rate to fit
    bool flagged = false;  ///< r2 < 0.99 on a fitted table
};

/// max over |x_j| ≤ window of |Δ^α_ℏ f(x) − ∂^α f(x)|, per ℏ. The box is
/// large enough that no stencil used in the window wraps.
RateTable difference_convergence(const SmoothFunction& f, const MultiIndex& alpha, const std::vector<double>& hbars,
                                 double window = 2.0);

/// max over the window of |d^{(β)}_{ℏ,ω} f − (2πi)^{−|β|} ∂^β f| with ω = θ/ℏ
/// on a grid of `points_per_unit` samples per unit of ω. f must be periodic
/// on the rescaled torus of side 1/ℏ (BadParameter otherwise).
RateTable rescaled_derivative_convergence(const SmoothFunction& f, const MultiIndex& beta,
                                          const std::vector<double>& hbars, double window = 2.0,
                                          int points_per_unit = 16);

/// Separable symbol a(x) b(ξ) on ℝ × ℝ; b must be periodic on every rescaled torus used.
struct SeparableSymbol {
    Smooth1D x_part;
    Smooth1D xi_part;
};

/// Lattice N-term composition ς_N against Σ_{α<N} (2πi)^{−α}/α! ∂_ξ^α σ ∂_x^α τ
/// on |x| ≤ window, |ξ| ≤ window (n = 1).
RateTable composition_limit_study(const SeparableSymbol& sigma, const SeparableSymbol& tau,
                                  const std::vector<double>& hbars, int N, double window = 2.0);

/// CSV with header hbar,error,fitted_order,r2.
void write_rate_csv(const RateTable& t, std::ostream& os);

} // namespace sclat

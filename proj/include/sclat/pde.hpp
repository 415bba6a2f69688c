#pragma once

#include "sclat/calculus.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace sclat {

enum class EllipticMethod { inverse_multiplier, parametrix, direct };

struct EllipticOptions {
    EllipticMethod method = EllipticMethod::direct;
    int parametrix_order = 2;    ///< N for the parametrix method
    bool defect_sweep = true;    ///< one correction f += Op(V)(g − Op(σ)f)
    double decay_weight = 2.0;   ///< s in the ratio ‖f‖_{ℓ²_s}/‖g‖_{ℓ²_s}
};

struct EllipticSolution {
    LatticeFunction f;
    double residual = 0.0;        ///< ‖Op(σ)f − g‖/‖g‖ (absolute when g = 0)
    double weighted_ratio = 0.0;  ///< ‖f‖_{ℓ²_s}/‖g‖_{ℓ²_s}
    EllipticMethod method = EllipticMethod::direct;
};

/// Solve Op(σ)f = g.
///
/// inverse_multiplier needs σ θ-only or k-only and nonzero on the grid
/// (SymbolVanishesOnGrid); parametrix needs an elliptic σ (NotElliptic);
/// direct uses a full-pivot LU of the kernel (SingularMatrix).
EllipticSolution solve_elliptic(const Symbol& sigma, const LatticeFunction& g, const EllipticOptions& opt = {});

enum class ParabolicScheme { implicit_euler, exact_multiplier };

/// ∂_t w = Op(σ_D) w + g(t), w(0) = w0 on [0, T].
struct ParabolicProblem {
    Symbol generator;
    LatticeFunction w0;
    /// Source sampled at the left end of each step; empty means g ≡ 0.
    std::function<LatticeFunction(double)> source;
    double T = 1.0;
    double dt = 0.1;
    ParabolicScheme scheme = ParabolicScheme::implicit_euler;
};

struct EnergyReport {
    double C2 = 0.0;               ///< growth rate in d/dt‖w‖² ≤ C2‖w‖² + …
    std::string C2_origin;         ///< "garding" or "hermitian-part"
    double C = 0.0;                ///< 1 + (C2+1)T e^{(C2+1)T}
    double C_fit = 0.0;            ///< ‖w_1‖² / (‖w0‖² + dt‖g_0‖²)
    std::vector<double> energy;    ///< ‖w_j‖²
    std::vector<double> bound;     ///< C (‖w0‖² + Σ_{i<j} dt‖g_i‖²)
    bool certified = false;
    std::size_t violating_step = 0;     ///< first step breaking the certificate (0 = none)
    bool fit_certifies = false;         ///< C_fit certifies every step as well
    bool stepwise_stable = false;       ///< ‖w_{j+1}‖ ≤ ‖w_j‖ + dt‖g_j‖ for all j
    std::size_t unstable_step = 0;
};

struct ParabolicResult {
    std::vector<double> times;
    std::vector<LatticeFunction> trajectory;
    EnergyReport energy;
};

/// Implicit Euler (SingularStepMatrix) or the closed-form scheme for θ-only
/// or k-only generators. With `require_certificate` a failing energy
/// certificate raises EnergyCertificateFailed carrying the step.
ParabolicResult solve_parabolic(const ParabolicProblem& problem, bool require_certificate = true);

/// CSV with header t,k,re,im.
void write_trajectory_csv(const ParabolicResult& r, std::ostream& os);

} // namespace sclat

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace sclat {

using cplx = std::complex<double>;

/// Finite periodic model of the lattice ℏZⁿ: a box of Mⁿ points with
/// wrapped index arithmetic, together with the dual torus grid {i/M}ⁿ.
///
/// Points of the box and of the grid share one linear layout: a linear
/// index p decodes into per-axis digits d_j ∈ [0, M) (axis 0 slowest).
/// On the box the digit stands for the signed index m_j ≡ d_j (mod M) in
/// [−M/2, M/2); on the grid it stands for θ_j = d_j / M. This is the
/// natural FFT order, so no index shuffling is needed around transforms.
///
/// The model is a cheap value type (shared immutable tables).
class LatticeModel {
public:
    /// Throws InvalidModel unless n ≥ 1, ℏ ∈ (0,1], M ≥ 2 even and Mⁿ fits.
    LatticeModel(int n, double hbar, int M);

    int dim() const noexcept;
    double hbar() const noexcept;
    int points_per_axis() const noexcept;
    /// Mⁿ, the number of box points (and of grid points).
    std::size_t size() const noexcept;

    /// Signed index m_j ∈ [−M/2, M/2) of box point p on `axis`.
    int index(std::size_t p, int axis) const noexcept;
    /// Digit d_j ∈ [0, M) of point p on `axis` (also the grid index).
    int digit(std::size_t p, int axis) const noexcept;
    /// Physical coordinate k_j = ℏ m_j.
    double coordinate(std::size_t p, int axis) const noexcept { return hbar() * index(p, axis); }
    /// Grid coordinate θ_j = d_j / M ∈ [0, 1).
    double theta(std::size_t t, int axis) const noexcept;
    /// |k| = ℏ (Σ m_j²)^{1/2}.
    double abs_k(std::size_t p) const noexcept;
    const std::vector<double>& abs_k_table() const noexcept;

    /// Linear index of the point with signed indices m (wrapped modulo M).
    std::size_t point(std::span<const int> m) const;
    /// Point reached from p by `steps` lattice steps along `axis` (wrapped).
    std::size_t shift(std::size_t p, int axis, int steps) const noexcept;
    /// Index arithmetic in the group (Z/M)ⁿ.
    std::size_t add(std::size_t p, std::size_t q) const noexcept;
    std::size_t sub(std::size_t p, std::size_t q) const noexcept;
    std::size_t negate(std::size_t p) const noexcept;
    /// Σ_j m_j(p)·d_j(t) modulo M: the phase index of e^{2πi m·θ}.
    int phase_index(std::size_t p, std::size_t t) const noexcept;

    /// Radius of the largest ball centred at 0 inside the box, ℏM/2.
    double box_radius() const noexcept;
    /// (1 + |k|)^s for every box point.
    std::vector<double> weights(double s) const;

    bool operator==(const LatticeModel& other) const noexcept;
    bool operator!=(const LatticeModel& other) const noexcept { return !(*this == other); }

    /// "n=2 hbar=0.5 M=16".
    std::string describe() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// Throws ModelMismatch when the two models differ.
void require_same_model(const LatticeModel& a, const LatticeModel& b, const char* context);

/// Complex samples on the lattice box.
struct LatticeFunction {
    LatticeModel model;
    std::vector<cplx> values;

    explicit LatticeFunction(const LatticeModel& m);
    LatticeFunction(const LatticeModel& m, std::vector<cplx> v);

    static LatticeFunction delta(const LatticeModel& m, std::size_t p);

    std::size_t size() const noexcept { return values.size(); }
    cplx& operator[](std::size_t p) { return values[p]; }
    const cplx& operator[](std::size_t p) const { return values[p]; }
};

/// Complex samples on the dual torus grid.
struct TorusFunction {
    LatticeModel model;
    std::vector<cplx> values;

    explicit TorusFunction(const LatticeModel& m);
    TorusFunction(const LatticeModel& m, std::vector<cplx> v);

    std::size_t size() const noexcept { return values.size(); }
    cplx& operator[](std::size_t t) { return values[t]; }
    const cplx& operator[](std::size_t t) const { return values[t]; }
};

/// F(θ) = Σ_m e^{−2πi m·θ} f(ℏm) on every grid θ.
TorusFunction forward_fourier(const LatticeFunction& f);
/// f(ℏm) = M^{−n} Σ_θ e^{2πi m·θ} F(θ).
LatticeFunction inverse_fourier(const TorusFunction& F);

/// (Σ_k (1+|k|)^{2s} |f(k)|²)^{1/2}.
double weighted_l2_norm(const LatticeFunction& f, double s);
/// (Σ_k ((1+|k|)^s |f(k)|)^p)^{1/p}; p = +∞ gives the weighted sup norm.
double weighted_lp_norm(const LatticeFunction& f, double p, double s);
/// Plain ℓ² norm on the box.
double l2_norm(const LatticeFunction& f);
/// L² norm on the grid with weight M^{−n} per point.
double l2_norm(const TorusFunction& F);
/// (f, g) = Σ_k f(k) conj(g(k)).
cplx inner(const LatticeFunction& f, const LatticeFunction& g);

/// Independent uniform samples in [−1,1] + i[−1,1].
LatticeFunction random_lattice_function(const LatticeModel& m, std::mt19937_64& rng);
TorusFunction random_torus_function(const LatticeModel& m, std::mt19937_64& rng);
cplx random_complex(std::mt19937_64& rng);

} // namespace sclat

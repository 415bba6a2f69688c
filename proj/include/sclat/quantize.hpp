#pragma once

#include "sclat/symbol.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <vector>

namespace sclat {

/// Dense kernel K(k,m) of an operator on the box: (Tf)(k) = Σ_m K(k,m) f(m).
struct KernelMatrix {
    LatticeModel model;
    Eigen::MatrixXcd entries;
};

/// Op(σ)f(k) = M^{−n} Σ_θ e^{2πi m·θ} σ(ℏm, θ) F(θ) with F the forward transform of f.
/// θ-only and k-only symbols take an O(Mⁿ log M) path.
LatticeFunction apply(const Symbol& sigma, const LatticeFunction& f);

/// K(k,m) = κ(k, k−m) where κ(k,·) is the inverse grid transform of σ(k,·).
KernelMatrix kernel(const Symbol& sigma);

/// σ(k,θ) = e^{−2πi m·θ}(T e_θ)(k); exact inverse of kernel().
Symbol extract_symbol(const KernelMatrix& T);

/// Kernel matrix of a symbol, as a plain matrix.
inline Eigen::MatrixXcd kernel_matrix(const Symbol& sigma) { return kernel(sigma).entries; }

enum class DecayKind { measured, infinite, compact };

struct KernelDecayRow {
    int Q = 0;
    double C = 0.0;  ///< best C_Q in |K(k,m)| ≤ C_Q (1+|k|)^{μ+2Qδ} (1+|k−m|/ℏ)^{−2Q}
};

struct KernelDecayReport {
    SymbolClass cls;
    std::vector<KernelDecayRow> rows;
    DecayKind kind = DecayKind::measured;
    double exponent = 0.0;   ///< fitted decay exponent of max |K| versus periodic distance
    double r2 = 0.0;
    int support_radius = 0;  ///< largest lattice distance (in steps) with a nonzero entry
    std::string grid;
};

/// Fitted kernel decay constants for Q = 0…Q_max (Q_max ≤ 4). Entries with
/// |K| ≤ 1e−13·max|K| count as zero. Uses the declared class, else (0, 1, 0).
KernelDecayReport kernel_decay_report(const Symbol& sigma, int Q_max);

/// Af(k) = Σ_l M^{−n} Σ_θ e^{2πi(m_k−m_l)·θ} a(k,l,θ) f(l).
LatticeFunction apply_amplitude(const Amplitude& a, const LatticeFunction& f);
/// Matrix of the amplitude operator.
Eigen::MatrixXcd amplitude_matrix(const Amplitude& a);

/// Σ_{|α|<N} (1/α!) Δ^α_l D^{(α)}_θ a(k,l,θ) at l = k; requires 1 ≤ N ≤ 4.
Symbol amplitude_to_symbol(const Amplitude& a, int N);

/// CSV with header row,col,re,im (one line per entry).
void write_kernel_csv(const KernelMatrix& K, std::ostream& os);

} // namespace sclat

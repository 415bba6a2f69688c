#pragma once

// Independent reference implementations used by the tests. Everything here
// is plain direct summation over the box and grid; none of it calls FFTW or
// the library's quantization code.

#include "sclat/lattice.hpp"
#include "sclat/symbol.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace oracle {

using sclat::cplx;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// e^{2πi m·θ} for box point p and grid point t, from the signed indices.
inline cplx character(const sclat::LatticeModel& m, std::size_t p, std::size_t t) {
    double phase = 0.0;
    for (int j = 0; j < m.dim(); ++j) phase += m.index(p, j) * m.theta(t, j);
    return std::polar(1.0, kTwoPi * phase);
}

/// K(k,l) = M^{−n} Σ_θ e^{2πi(m_k − m_l)·θ} σ(k,θ).
inline Eigen::MatrixXcd kernel(const sclat::Symbol& s) {
    const auto& m = s.model();
    const std::size_t N = m.size();
    Eigen::MatrixXcd K(N, N);
    for (std::size_t p = 0; p < N; ++p)
        for (std::size_t q = 0; q < N; ++q) {
            cplx acc = 0.0;
            for (std::size_t t = 0; t < N; ++t) acc += character(m, p, t) * std::conj(character(m, q, t)) * s(p, t);
            K(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = acc / static_cast<double>(N);
        }
    return K;
}

/// σ(k,θ) = Σ_l K(k,l) e^{2πi(m_l − m_k)·θ}.
inline sclat::Symbol symbol_of(const Eigen::MatrixXcd& K, const sclat::LatticeModel& m) {
    const std::size_t N = m.size();
    return sclat::Symbol::from_function(m, [&](std::size_t p, std::size_t t) {
        cplx acc = 0.0;
        for (std::size_t q = 0; q < N; ++q)
            acc += K(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) * character(m, q, t) *
                   std::conj(character(m, p, t));
        return acc;
    });
}

/// F(θ) = Σ_m e^{−2πi m·θ} f(m).
inline sclat::TorusFunction fourier(const sclat::LatticeFunction& f) {
    const auto& m = f.model;
    sclat::TorusFunction F(m);
    for (std::size_t t = 0; t < m.size(); ++t)
        for (std::size_t p = 0; p < m.size(); ++p) F[t] += std::conj(character(m, p, t)) * f[p];
    return F;
}

inline Eigen::VectorXcd vec(const sclat::LatticeFunction& f) {
    return Eigen::Map<const Eigen::VectorXcd>(f.values.data(), static_cast<Eigen::Index>(f.size()));
}

/// Δ^α f(k) = ℏ^{−|α|} Σ_{γ≤α} (−1)^{|α−γ|} C(α,γ) f(k + ℏγ), with periodic wrap.
inline sclat::LatticeFunction difference(const sclat::LatticeFunction& f, const std::vector<int>& alpha) {
    const auto& m = f.model;
    const int n = m.dim();
    sclat::LatticeFunction out(m);
    int order = 0;
    for (int a : alpha) order += a;
    std::vector<int> g(static_cast<std::size_t>(n), 0);
    while (true) {
        double coeff = 1.0;
        int sign_exp = 0;
        for (int j = 0; j < n; ++j) {
            const int a = alpha[static_cast<std::size_t>(j)], c = g[static_cast<std::size_t>(j)];
            coeff *= std::tgamma(a + 1.0) / (std::tgamma(c + 1.0) * std::tgamma(a - c + 1.0));
            sign_exp += a - c;
        }
        if (sign_exp % 2) coeff = -coeff;
        for (std::size_t p = 0; p < m.size(); ++p) {
            std::size_t q = p;
            for (int j = 0; j < n; ++j) q = m.shift(q, j, g[static_cast<std::size_t>(j)]);
            out[p] += coeff * f[q];
        }
        int j = 0;
        while (j < n && ++g[static_cast<std::size_t>(j)] > alpha[static_cast<std::size_t>(j)]) g[static_cast<std::size_t>(j++)] = 0;
        if (j == n) break;
    }
    const double scale = std::pow(m.hbar(), -order);
    for (auto& v : out.values) v *= scale;
    return out;
}

inline sclat::Symbol random_symbol(const sclat::LatticeModel& m, std::mt19937_64& rng) {
    return sclat::Symbol::from_function(m, [&](std::size_t, std::size_t) { return sclat::random_complex(rng); });
}

inline double max_abs_diff(const sclat::Symbol& a, const sclat::Symbol& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.table().size(); ++i) d = std::max(d, std::abs(a.table()[i] - b.table()[i]));
    return d;
}

} // namespace oracle

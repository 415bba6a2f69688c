#include "sclat/quantize.hpp"

#include "sclat/difference.hpp"
#include "sclat/errors.hpp"
#include "sclat/fft.hpp"
#include "sclat/fit.hpp"
#include "sclat/simd.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

namespace sclat {

namespace {

/// e^{2πi r/M} for r = 0…M−1.
std::vector<cplx> roots_of_unity(int M) {
    std::vector<cplx> w(static_cast<std::size_t>(M));
    for (int r = 0; r < M; ++r) w[static_cast<std::size_t>(r)] = std::polar(1.0, 2.0 * std::numbers::pi * r / M);
    return w;
}

/// Σ_j min(|m_j|, M − |m_j|)² for the signed index of point p.
int periodic_distance_sq(const LatticeModel& m, std::size_t p) {
    int s = 0;
    for (int j = 0; j < m.dim(); ++j) {
        const int a = std::abs(m.index(p, j));
        const int d = std::min(a, m.points_per_axis() - a);
        s += d * d;
    }
    return s;
}

} // namespace

LatticeFunction apply(const Symbol& sigma, const LatticeFunction& f) {
    require_same_model(sigma.model(), f.model, "apply");
    const LatticeModel& m = f.model;
    const std::size_t N = m.size();
    if (sigma.is_k_only()) {
        LatticeFunction out(m);
        for (std::size_t p = 0; p < N; ++p) out[p] = sigma(p, 0) * f[p];
        return out;
    }
    TorusFunction F = forward_fourier(f);
    if (sigma.is_theta_only()) {
        simd::mul(F.values.data(), sigma.row(0), F.values.data(), N);
        return inverse_fourier(F);
    }
    const std::vector<cplx> w = roots_of_unity(m.points_per_axis());
    std::vector<cplx> prod(N);
    LatticeFunction out(m);
    const double inv_n = 1.0 / static_cast<double>(N);
    for (std::size_t p = 0; p < N; ++p) {
        simd::mul(sigma.row(p), F.values.data(), prod.data(), N);
        cplx s = 0.0;
        for (std::size_t t = 0; t < N; ++t) s += w[static_cast<std::size_t>(m.phase_index(p, t))] * prod[t];
        out[p] = s * inv_n;
    }
    return out;
}

KernelMatrix kernel(const Symbol& sigma) {
    const LatticeModel& m = sigma.model();
    const std::size_t N = m.size();
    std::vector<cplx> kappa = sigma.table();
    fft::rows(kappa, m, fft::Direction::backward);
    const double inv_n = 1.0 / static_cast<double>(N);
    KernelMatrix K{m, Eigen::MatrixXcd(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N))};
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t q = 0; q < N; ++q)
            K.entries(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(q)) = kappa[k * N + m.sub(k, q)] * inv_n;
    return K;
}

Symbol extract_symbol(const KernelMatrix& T) {
    const LatticeModel& m = T.model;
    const std::size_t N = m.size();
    if (static_cast<std::size_t>(T.entries.rows()) != N || static_cast<std::size_t>(T.entries.cols()) != N)
        throw ModelMismatch("extract_symbol: matrix shape differs from M^n x M^n");
    std::vector<cplx> table(N * N);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l)
            table[k * N + l] = T.entries(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m.sub(k, l)));
    fft::rows(table, m, fft::Direction::forward);
    return Symbol(m, std::move(table));
}

KernelDecayReport kernel_decay_report(const Symbol& sigma, int Q_max) {
    if (Q_max < 0 || Q_max > 4) throw BadParameter("kernel_decay_report: Q_max must lie in [0, 4]");
    const LatticeModel& m = sigma.model();
    const std::size_t N = m.size();
    const KernelMatrix K = kernel(sigma);
    KernelDecayReport rep;
    rep.cls = sigma.declared_class().value_or(SymbolClass{});
    rep.grid = m.describe();

    const double largest = K.entries.cwiseAbs().maxCoeff();
    const double floor = 1e-13 * largest;
    std::vector<int> dist_sq(N);
    for (std::size_t l = 0; l < N; ++l) dist_sq[l] = periodic_distance_sq(m, l);

    for (int Q = 0; Q <= Q_max; ++Q) {
        double c = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            const double growth = std::pow(1.0 + m.abs_k(k), rep.cls.mu + 2.0 * Q * rep.cls.delta);
            for (std::size_t q = 0; q < N; ++q) {
                const double v = std::abs(K.entries(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(q)));
                if (v <= floor) continue;
                const double d = std::sqrt(static_cast<double>(dist_sq[m.sub(k, q)]));
                c = std::max(c, v * std::pow(1.0 + d, 2.0 * Q) / growth);
            }
        }
        rep.rows.push_back({Q, c});
    }

    // Profile: max |K(k, k−l)| over k, grouped by the periodic distance of l.
    std::map<int, double> profile;
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t q = 0; q < N; ++q) {
            const double v = std::abs(K.entries(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(q)));
            double& slot = profile[dist_sq[m.sub(k, q)]];
            slot = std::max(slot, v > floor ? v : 0.0);
        }
    std::vector<double> xs, ys;
    for (const auto& [d2, v] : profile) {
        if (v == 0.0) continue;
        rep.support_radius = std::max(rep.support_radius, static_cast<int>(std::ceil(std::sqrt(double(d2)))));
        if (d2 == 0) continue;
        xs.push_back(std::log(1.0 + std::sqrt(static_cast<double>(d2))));
        ys.push_back(std::log(v));
    }
    if (xs.empty()) {
        rep.kind = DecayKind::infinite;
        rep.exponent = std::numeric_limits<double>::infinity();
        rep.r2 = 1.0;
    } else if (rep.support_radius <= m.points_per_axis() / 4) {
        rep.kind = DecayKind::compact;
        rep.exponent = std::numeric_limits<double>::infinity();
        rep.r2 = 1.0;
    } else {
        const LineFit fit = fit_line(xs, ys);
        rep.exponent = -fit.slope;
        rep.r2 = fit.r2;
    }
    return rep;
}

Eigen::MatrixXcd amplitude_matrix(const Amplitude& a) {
    const LatticeModel& m = a.model();
    const std::size_t N = m.size();
    const std::vector<cplx> w = roots_of_unity(m.points_per_axis());
    const double inv_n = 1.0 / static_cast<double>(N);
    Eigen::MatrixXcd A(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l) {
            const std::size_t d = m.sub(k, l);
            cplx s = 0.0;
            for (std::size_t t = 0; t < N; ++t) s += w[static_cast<std::size_t>(m.phase_index(d, t))] * a.at(k, l, t);
            A(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = s * inv_n;
        }
    return A;
}

LatticeFunction apply_amplitude(const Amplitude& a, const LatticeFunction& f) {
    require_same_model(a.model(), f.model, "apply_amplitude");
    const Eigen::MatrixXcd A = amplitude_matrix(a);
    const Eigen::Map<const Eigen::VectorXcd> x(f.values.data(), static_cast<Eigen::Index>(f.size()));
    const Eigen::VectorXcd y = A * x;
    return LatticeFunction(f.model, std::vector<cplx>(y.data(), y.data() + y.size()));
}

Symbol amplitude_to_symbol(const Amplitude& a, int N) {
    if (N < 1 || N > 4) throw BadParameter("amplitude_to_symbol: N must lie in [1, 4]");
    const LatticeModel& m = a.model();
    const std::size_t P = m.size();
    std::vector<cplx> out(P * P, 0.0);
    std::vector<cplx> slice(P * P);
    for (const MultiIndex& alpha : multi_indices_up_to(m.dim(), N - 1)) {
        const double weight = 1.0 / static_cast<double>(alpha.factorial());
        for (std::size_t k = 0; k < P; ++k) {
            // slice[l][θ] = a(k, l, θ)
            std::copy_n(a.table().begin() + static_cast<std::ptrdiff_t>(k * P * P), P * P, slice.begin());
            derivative_cols_inplace(slice, m, alpha, DerivativeKind::falling);
            difference_rows_inplace(slice, m, P, alpha);
            simd::axpy(&out[k * P], &slice[k * P], weight, P);
        }
    }
    return Symbol(m, std::move(out));
}

void write_kernel_csv(const KernelMatrix& K, std::ostream& os) {
    os << "row,col,re,im\n";
    os.precision(17);
    for (Eigen::Index r = 0; r < K.entries.rows(); ++r)
        for (Eigen::Index c = 0; c < K.entries.cols(); ++c)
            os << r << ',' << c << ',' << K.entries(r, c).real() << ',' << K.entries(r, c).imag() << '\n';
}

} // namespace sclat

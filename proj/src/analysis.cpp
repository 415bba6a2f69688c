#include "sclat/analysis.hpp"

#include "sclat/difference.hpp"
#include "sclat/errors.hpp"
#include "sclat/fft.hpp"
#include "sclat/simd.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sclat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& A) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    return svd.singularValues();
}

double spectral_norm(const Eigen::MatrixXcd& A) {
    return A.size() == 0 ? 0.0 : singular_values(A)(0);
}

/// κ(k,l) = M^{−n} Σ_θ e^{2πi l·θ} σ(k,θ), stored as [k][l].
std::vector<cplx> fourier_coefficients(const Symbol& sigma) {
    std::vector<cplx> kappa = sigma.table();
    fft::rows(kappa, sigma.model(), fft::Direction::backward);
    const double inv_n = 1.0 / static_cast<double>(sigma.points());
    for (auto& v : kappa) v *= inv_n;
    return kappa;
}

std::vector<double> lambda_profile(const std::vector<cplx>& kappa, std::size_t N) {
    std::vector<double> lambda(N, 0.0);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l) lambda[l] = std::max(lambda[l], std::abs(kappa[k * N + l]));
    return lambda;
}

double lp_norm(const Eigen::VectorXcd& v, double p) {
    if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
    double s = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)), p);
    return std::pow(s, 1.0 / p);
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& K) { return 0.5 * (K + K.adjoint()); }

double min_eigenvalue(const Eigen::MatrixXcd& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

/// W^{−1/2} H W^{−1/2} for W = diag(w).
Eigen::MatrixXcd congruence(const Eigen::MatrixXcd& H, const std::vector<double>& w) {
    Eigen::VectorXd s(static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) s(static_cast<Eigen::Index>(i)) = 1.0 / std::sqrt(w[i]);
    return s.asDiagonal() * H * s.asDiagonal();
}

} // namespace

LatticeModel grown(const LatticeModel& m) { return LatticeModel(m.dim(), m.hbar(), 2 * m.points_per_axis()); }

double exact_lp_norm(const Eigen::MatrixXcd& K, double p) {
    if (p == 1.0) return K.cwiseAbs().colwise().sum().maxCoeff();
    if (p == 2.0) return spectral_norm(K);
    if (std::isinf(p) && p > 0) return K.cwiseAbs().rowwise().sum().maxCoeff();
    throw BadParameter("exact_lp_norm: only p = 1, 2, inf have closed forms");
}

HsReport hs_norm_check(const Symbol& sigma) {
    HsReport r;
    r.symbol_norm = std::sqrt(simd::sum_abs2(sigma.table().data(), sigma.table().size()) /
                              static_cast<double>(sigma.points()));
    r.frobenius_norm = kernel_matrix(sigma).norm();
    r.gap = std::abs(r.symbol_norm - r.frobenius_norm);
    return r;
}

YoungReport lp_bound_young(const Symbol& sigma, double p, std::uint64_t seed, int probes) {
    if (!(p >= 1.0)) throw BadParameter("lp_bound_young: p must be ≥ 1");
    const std::size_t N = sigma.points();
    YoungReport r;
    r.p = p;
    r.lambda = lambda_profile(fourier_coefficients(sigma), N);
    for (double v : r.lambda) r.predicted += v;
    const Eigen::MatrixXcd K = kernel_matrix(sigma);
    if (p == 1.0 || p == 2.0 || std::isinf(p)) {
        r.empirical = exact_lp_norm(K, p);
        r.exact = true;
    } else {
        std::mt19937_64 rng(seed);
        for (std::size_t d = 0; d < N; ++d)
            r.empirical = std::max(r.empirical, lp_norm(K.col(static_cast<Eigen::Index>(d)), p));
        for (int i = 0; i < probes; ++i) {
            const LatticeFunction f = random_lattice_function(sigma.model(), rng);
            const Eigen::Map<const Eigen::VectorXcd> x(f.values.data(), static_cast<Eigen::Index>(N));
            r.empirical = std::max(r.empirical, lp_norm(K * x, p) / lp_norm(x, p));
        }
    }
    r.holds = r.empirical <= r.predicted + 1e-9;
    return r;
}

L2BoundReport l2_bound_from_seminorms(const SymbolSource& source, const LatticeModel& model) {
    L2BoundReport r;
    r.kappa = model.dim() / 2 + 1;
    r.grid = model.describe();
    const Symbol s = source(model);
    for (const MultiIndex& alpha : multi_indices_up_to(model.dim(), r.kappa)) {
        std::vector<cplx> t = s.table();
        derivative_cols_inplace(t, model, alpha, DerivativeKind::falling);
        r.seminorm = std::max(r.seminorm, simd::max_abs(t.data(), t.size()));
    }
    r.norm = spectral_norm(kernel_matrix(s));
    r.norm_grown = spectral_norm(kernel_matrix(source(grown(model))));
    r.ratio = r.norm > 0.0 ? r.norm_grown / r.norm : (r.norm_grown > 0.0 ? kInf : 1.0);
    r.stable = r.ratio <= 1.1;
    return r;
}

double compactness_estimate(const Symbol& sigma, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) throw BadParameter("compactness: fraction must lie in (0, 1)");
    const LatticeModel& m = sigma.model();
    const double cut = fraction * m.box_radius();
    double d = 0.0;
    for (std::size_t p = 0; p < m.size(); ++p)
        if (m.abs_k(p) >= cut) d = std::max(d, simd::max_abs(sigma.row(p), m.size()));
    return d;
}

CompactnessReport compactness_indicator(const SymbolSource& source, const LatticeModel& model, double fraction) {
    CompactnessReport r;
    r.fraction = fraction;
    r.d = compactness_estimate(source(model), fraction);
    r.d_grown = compactness_estimate(source(grown(model)), fraction);
    r.trend = r.d_grown - r.d;
    return r;
}

GohbergReport gohberg_gap(const Symbol& sigma, const std::vector<int>& ranks, double fraction,
                          double trend_correction) {
    const LatticeModel& m = sigma.model();
    const std::size_t N = m.size();
    GohbergReport r;
    r.d = compactness_estimate(sigma, fraction);
    r.tol = 1e-6 + std::abs(trend_correction);
    const Eigen::VectorXd sv = singular_values(kernel_matrix(sigma));
    r.singular_values.assign(sv.data(), sv.data() + sv.size());
    r.holds = true;
    for (int rank : ranks) {
        if (rank < 0) throw BadParameter("gohberg_gap: ranks must be nonnegative");
        GohbergRow row;
        row.rank = rank;
        row.distance = static_cast<std::size_t>(rank) < N ? sv(rank) : 0.0;
        row.margin = row.distance - (r.d - r.tol);
        row.holds = row.margin >= 0.0;
        r.holds = r.holds && row.holds;
        r.rows.push_back(row);
    }

    const double cut = fraction * m.box_radius();
    for (int j = 0; j < m.dim(); ++j) {
        for (int kind = 0; kind < 2; ++kind) {
            TorusFunction q(m);
            for (std::size_t t = 0; t < N; ++t) {
                const double x = 2.0 * std::numbers::pi * m.theta(t, j);
                q[t] = kind == 0 ? std::polar(1.0, x) - 1.0 : cplx(std::sin(x));
            }
            const std::string ax = std::to_string(j + 1);
            GohbergProbe probe{kind == 0 ? "exp(2*pi*i*theta" + ax + ") - 1" : "sin(2*pi*theta" + ax + ")", 0.0, 0.0};
            for (std::size_t t = 0; t < N; ++t) {
                const LatticeFunction dq = generalized_difference(q, sigma.column(t));
                for (std::size_t p = 0; p < N; ++p) {
                    const double v = std::abs(dq[p]);
                    probe.all = std::max(probe.all, v);
                    if (m.abs_k(p) >= cut) probe.outer = std::max(probe.outer, v);
                }
            }
            r.probes.push_back(probe);
        }
    }
    return r;
}

SchattenReport schatten_report(const Symbol& sigma, double p) {
    if (!(p > 0.0 && p <= 2.0)) throw BadParameter("schatten_report: p must lie in (0, 2]");
    const LatticeModel& m = sigma.model();
    const std::size_t N = m.size();
    SchattenReport r;
    r.p = p;
    for (std::size_t k = 0; k < N; ++k) {
        const double l2 = std::sqrt(simd::sum_abs2(sigma.row(k), N) / static_cast<double>(N));
        r.bound_lhs += std::pow(l2, p);
    }
    const Eigen::MatrixXcd K = kernel_matrix(sigma);
    const Eigen::VectorXd sv = singular_values(K);
    r.singular_values.assign(sv.data(), sv.data() + sv.size());
    double sp = 0.0;
    for (double s : r.singular_values) sp += std::pow(s, p);
    r.schatten_norm = std::pow(sp, 1.0 / p);
    r.bound_holds = sp <= r.bound_lhs * (1.0 + 1e-9) + 1e-12;
    if (p == 1.0) {
        r.matrix_trace = K.trace();
        for (std::size_t k = 0; k < N; ++k) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < N; ++t) s += sigma(k, t);
            r.symbol_trace += s / static_cast<double>(N);
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(K, false);
        r.eigenvalue_sum = es.eigenvalues().sum();
    }
    return r;
}

GardingReport garding_constants(const Symbol& sigma, double m) {
    const LatticeModel& model = sigma.model();
    const Eigen::MatrixXcd H = hermitian_part(kernel_matrix(sigma));
    const std::vector<double> w = model.weights(2.0 * m);
    const Eigen::MatrixXcd G = congruence(H, w);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();

    GardingReport r;
    r.m = m;
    r.lambda_min = ev(0);
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff()) * *std::max_element(w.begin(), w.end());
    r.tol = 1e-9 * scale;

    Eigen::VectorXd W(static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) W(static_cast<Eigen::Index>(i)) = w[i];
    auto certificate = [&](double c0, double c1) {
        Eigen::MatrixXcd A = H;
        A.diagonal() -= (c0 * W).cast<cplx>();
        A.diagonal().array() += c1;
        return min_eigenvalue(A);
    };

    if (r.lambda_min > 0.0) {
        r.C0 = r.lambda_min;
        r.C1 = 0.0;
    } else {
        std::vector<double> positive;
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            if (ev(i) > 0.0) positive.push_back(ev(i));
        if (positive.empty())
            throw FormUnboundedBelow("garding_constants: the weighted form has no positive direction on " +
                                     model.describe());
        std::nth_element(positive.begin(), positive.begin() + static_cast<std::ptrdiff_t>(positive.size() / 2),
                         positive.end());
        r.C0 = 0.5 * positive[positive.size() / 2];
        r.C1 = std::max(0.0, -certificate(r.C0, 0.0));
    }
    r.certificate = certificate(r.C0, r.C1);
    while (r.certificate < -r.tol && r.bisections < 60) {
        r.C0 *= 0.5;
        r.C1 = std::max(0.0, -certificate(r.C0, 0.0));
        r.certificate = certificate(r.C0, r.C1);
        ++r.bisections;
    }
    r.verified = r.certificate >= -r.tol;
    if (!r.verified || !(r.C0 > 0.0))
        throw FormUnboundedBelow("garding_constants: no certified pair with C0 > 0 on " + model.describe());
    return r;
}

SharpGardingReport sharp_garding_check(const Symbol& sigma, double m) {
    const double scale = std::max(1.0, sigma.max_abs());
    for (std::size_t i = 0; i < sigma.table().size(); ++i) {
        const cplx v = sigma.table()[i];
        if (v.real() < -1e-12 * scale || std::abs(v.imag()) > 1e-12 * scale) {
            const std::size_t N = sigma.points();
            throw NotPointwiseNonnegative("sharp_garding_check: sigma is not >= 0 at box point " +
                                          std::to_string(i / N) + ", grid point " + std::to_string(i % N));
        }
    }
    const Eigen::MatrixXcd H = hermitian_part(kernel_matrix(sigma));
    const Eigen::MatrixXcd G = congruence(H, sigma.model().weights(m - 1.0));
    const double lmin = min_eigenvalue(G);
    SharpGardingReport r;
    r.m = m;
    r.C = lmin < -1e-12 * scale ? -lmin : 0.0;
    return r;
}

SharpGardingReport sharp_garding_trend(const SymbolSource& source, const LatticeModel& model, double m) {
    SharpGardingReport r = sharp_garding_check(source(model), m);
    r.C_grown = sharp_garding_check(source(grown(model)), m).C;
    r.ratio = r.C > 0.0 ? r.C_grown / r.C : (r.C_grown > 0.0 ? kInf : 1.0);
    r.has_trend = true;
    return r;
}

LinkReport link_check(const Symbol& sigma) {
    const LatticeModel& m = sigma.model();
    const std::size_t N = m.size();
    const int M = m.points_per_axis();
    std::vector<cplx> w(static_cast<std::size_t>(M));
    for (int r = 0; r < M; ++r) w[static_cast<std::size_t>(r)] = std::polar(1.0, 2.0 * std::numbers::pi * r / M);
    const auto ni = static_cast<Eigen::Index>(N);

    // E(t, p) = e^{2πi θ_t·k̄_p}; F = conj(E)ᵀ maps lattice to grid (forward transform).
    Eigen::MatrixXcd E(ni, ni);
    for (std::size_t t = 0; t < N; ++t)
        for (std::size_t p = 0; p < N; ++p)
            E(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(p)) = w[static_cast<std::size_t>(m.phase_index(p, t))];

    // Op_T(τ)(θ, θ') = Σ_k̄ e^{2πiθ·k̄} τ(θ,k̄) M^{−n} e^{−2πiθ'·k̄}.
    Eigen::MatrixXcd ET(ni, ni);
    for (std::size_t t = 0; t < N; ++t)
        for (std::size_t p = 0; p < N; ++p) {
            const cplx tau = std::conj(sigma(m.negate(p), t));
            ET(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(p)) =
                E(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(p)) * tau;
        }
    const Eigen::MatrixXcd A = ET * E.adjoint() / static_cast<double>(N);
    const Eigen::MatrixXcd F = E.conjugate();  // forward transform, F(t,p) = e^{−2πiθ_t·k̄_p}
    const Eigen::MatrixXcd Finv = F.adjoint() / static_cast<double>(N);
    const Eigen::MatrixXcd B = Finv * A.adjoint() * F;
    LinkReport r;
    r.gap = spectral_norm(kernel_matrix(sigma) - B);
    r.holds = r.gap <= 1e-9;
    return r;
}

WeightedReport weighted_bound_check(const Symbol& sigma, double s) {
    if (!sigma.declared_class())
        throw MissingClassDeclaration("weighted_bound_check: the symbol carries no declared order");
    const LatticeModel& m = sigma.model();
    WeightedReport r;
    r.r = sigma.declared_class()->mu;
    r.s = s;
    const std::vector<double> left = m.weights(s - r.r);
    const std::vector<double> right = m.weights(-s);
    Eigen::VectorXd L(static_cast<Eigen::Index>(left.size())), R(static_cast<Eigen::Index>(right.size()));
    for (std::size_t i = 0; i < left.size(); ++i) {
        L(static_cast<Eigen::Index>(i)) = left[i];
        R(static_cast<Eigen::Index>(i)) = right[i];
    }
    r.norm = spectral_norm(L.asDiagonal() * kernel_matrix(sigma) * R.asDiagonal());
    return r;
}

WeightedReport weighted_bound_trend(const SymbolSource& source, const LatticeModel& model, double s) {
    WeightedReport r = weighted_bound_check(source(model), s);
    r.norm_grown = weighted_bound_check(source(grown(model)), s).norm;
    r.ratio = r.norm > 0.0 ? r.norm_grown / r.norm : (r.norm_grown > 0.0 ? kInf : 1.0);
    r.has_trend = true;
    return r;
}

LpCompactnessReport lp_compactness_probe(const Symbol& sigma, double p) {
    if (!(p >= 1.0)) throw BadParameter("lp_compactness_probe: p must be ≥ 1");
    const LatticeModel& m = sigma.model();
    const std::size_t N = m.size();
    const std::vector<cplx> kappa = fourier_coefficients(sigma);
    const std::vector<double> lambda = lambda_profile(kappa, N);
    const double lmax = *std::max_element(lambda.begin(), lambda.end());

    LpCompactnessReport r;
    r.p = p;
    r.omega.assign(N, 0.0);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l)
            if (lambda[l] > 1e-14 * lmax) r.omega[k] = std::max(r.omega[k], std::abs(kappa[k * N + l]) / lambda[l]);
    const double cut = 0.75 * m.box_radius();
    for (std::size_t k = 0; k < N; ++k) {
        r.omega_max = std::max(r.omega_max, r.omega[k]);
        if (m.abs_k(k) >= cut) r.omega_outer = std::max(r.omega_outer, r.omega[k]);
    }
    r.decaying = r.omega_max > 0.0 && r.omega_outer <= 0.5 * r.omega_max;

    const bool exact = p == 1.0 || p == 2.0 || std::isinf(p);
    for (double frac : {0.25, 0.5, 0.75}) {
        const double radius = frac * m.box_radius();
        std::vector<cplx> tail(N * N, 0.0);
        for (std::size_t k = 0; k < N; ++k)
            if (m.abs_k(k) > radius) std::copy_n(sigma.row(k), N, tail.begin() + static_cast<std::ptrdiff_t>(k * N));
        const Symbol t(m, std::move(tail));
        r.radii.push_back(radius);
        r.tail_norms.push_back(exact ? exact_lp_norm(kernel_matrix(t), p) : lp_bound_young(t, p).predicted);
    }
    return r;
}

} // namespace sclat

#include "sclat/difference.hpp"

#include "sclat/errors.hpp"
#include "sclat/fft.hpp"
#include "sclat/simd.hpp"

#include <cmath>
#include <numbers>

namespace sclat {

namespace {

void check_dim(const MultiIndex& a, const LatticeModel& m, const char* what) {
    if (a.dim() != m.dim()) throw BadParameter(std::string(what) + ": multi-index dimension differs from model");
}

} // namespace

void difference_rows_inplace(std::vector<cplx>& table, const LatticeModel& model, std::size_t cols,
                             const MultiIndex& alpha) {
    check_dim(alpha, model, "difference");
    const std::size_t N = model.size();
    const double inv_h = 1.0 / model.hbar();
    std::vector<cplx> next(table.size());
    for (int j = 0; j < model.dim(); ++j) {
        for (int rep = 0; rep < alpha[j]; ++rep) {
            for (std::size_t p = 0; p < N; ++p) {
                const std::size_t q = model.shift(p, j, 1);
                const cplx* a = &table[q * cols];
                const cplx* b = &table[p * cols];
                cplx* out = &next[p * cols];
                for (std::size_t c = 0; c < cols; ++c) out[c] = (a[c] - b[c]) * inv_h;
            }
            table.swap(next);
        }
    }
}

std::vector<double> derivative_factors(const LatticeModel& model, const MultiIndex& beta, DerivativeKind kind) {
    check_dim(beta, model, "derivative");
    const std::size_t N = model.size();
    const double scale = std::pow(model.hbar(), beta.order());
    std::vector<double> f(N);
    for (std::size_t t = 0; t < N; ++t) {
        double v = scale;
        for (int j = 0; j < model.dim(); ++j) {
            const std::int64_t mode = model.index(t, j);
            if (kind == DerivativeKind::falling) {
                v *= static_cast<double>(falling_factorial(mode, beta[j]));
            } else {
                std::int64_t pw = 1;
                for (int e = 0; e < beta[j]; ++e) pw *= mode;
                v *= static_cast<double>(pw);
            }
        }
        f[t] = v;
    }
    return f;
}

void derivative_cols_inplace(std::vector<cplx>& table, const LatticeModel& model, const MultiIndex& beta,
                             DerivativeKind kind) {
    if (beta.order() == 0) {
        check_dim(beta, model, "derivative");
        return;
    }
    const std::size_t N = model.size();
    std::vector<double> factors = derivative_factors(model, beta, kind);
    const double inv_n = 1.0 / static_cast<double>(N);
    for (auto& v : factors) v *= inv_n;
    fft::rows(table, model, fft::Direction::forward);
    for (std::size_t r = 0; r < table.size() / N; ++r)
        simd::mul_real(&table[r * N], factors.data(), &table[r * N], N);
    fft::rows(table, model, fft::Direction::backward);
}

LatticeFunction forward_difference(const LatticeFunction& f, const MultiIndex& alpha) {
    LatticeFunction out = f;
    difference_rows_inplace(out.values, f.model, 1, alpha);
    return out;
}

TorusFunction diff_multiplier(const MultiIndex& alpha, const LatticeModel& model) {
    check_dim(alpha, model, "diff_multiplier");
    TorusFunction q(model);
    const double scale = std::pow(model.hbar(), -alpha.order());
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t t = 0; t < model.size(); ++t) {
        cplx v = scale;
        for (int j = 0; j < model.dim(); ++j) {
            const cplx e = std::polar(1.0, two_pi * model.theta(t, j)) - 1.0;
            for (int r = 0; r < alpha[j]; ++r) v *= e;
        }
        q[t] = v;
    }
    return q;
}

TorusFunction derivative_D(const TorusFunction& g, const MultiIndex& beta, DerivativeKind kind) {
    TorusFunction out = g;
    derivative_cols_inplace(out.values, g.model, beta, kind);
    return out;
}

LatticeFunction generalized_difference(const TorusFunction& q, const LatticeFunction& g) {
    require_same_model(q.model, g.model, "generalized_difference");
    TorusFunction G = forward_fourier(g);
    simd::mul(G.values.data(), q.values.data(), G.values.data(), G.size());
    LatticeFunction out = inverse_fourier(G);
    const double inv_h = 1.0 / g.model.hbar();
    for (auto& v : out.values) v *= inv_h;
    return out;
}

LatticeFunction generalized_difference_convolution(const TorusFunction& q, const LatticeFunction& g) {
    require_same_model(q.model, g.model, "generalized_difference_convolution");
    const LatticeModel& m = g.model;
    const LatticeFunction kernel = inverse_fourier(q);
    LatticeFunction out(m);
    const double inv_h = 1.0 / m.hbar();
    for (std::size_t p = 0; p < m.size(); ++p) {
        cplx s = 0.0;
        for (std::size_t r = 0; r < m.size(); ++r) s += g[r] * kernel[m.sub(p, r)];
        out[p] = s * inv_h;
    }
    return out;
}

cplx taylor_divisor(double theta, double hbar) {
    return std::polar(1.0, 2.0 * std::numbers::pi * theta / hbar) - 1.0;
}

TaylorExpansion toroidal_taylor(const TorusFunction& f, int N, bool strict) {
    const LatticeModel& m = f.model;
    if (m.dim() != 1) throw BadParameter("toroidal_taylor: requires a one-dimensional model");
    if (N < 1) throw BadParameter("toroidal_taylor: N must be positive");

    const std::size_t size = m.size();
    std::vector<cplx> divisor(size);
    std::vector<std::size_t> zeros;
    for (std::size_t t = 0; t < size; ++t) {
        const double x = m.theta(t, 0) / m.hbar();
        // Exact zero test on θ/ℏ ∈ Z; the rounding tolerance absorbs representation error only.
        if (std::abs(x - std::round(x)) < 1e-12) {
            zeros.push_back(t);
            divisor[t] = 0.0;
        } else {
            divisor[t] = taylor_divisor(m.theta(t, 0), m.hbar());
        }
    }
    if (strict && zeros.size() > 1)
        throw DivisorSingularity("toroidal_taylor: the divisor vanishes at grid points other than 0", zeros);

    TaylorExpansion out{{}, f, {}};
    if (zeros.size() > 1) out.branch_points = zeros;
    const MultiIndex first{1};
    for (int j = 0; j < N; ++j) {
        TorusFunction& fj = out.remainder;
        const cplx c = fj[0];
        out.coefficients.push_back(c);
        const TorusFunction deriv = derivative_D(fj, first, DerivativeKind::plain);
        TorusFunction next(m);
        for (std::size_t t = 0; t < size; ++t)
            next[t] = divisor[t] == 0.0 ? deriv[t] : (fj[t] - c) / divisor[t];
        out.remainder = std::move(next);
    }
    return out;
}

} // namespace sclat

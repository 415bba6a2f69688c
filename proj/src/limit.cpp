#include "sclat/limit.hpp"

#include "sclat/calculus.hpp"
#include "sclat/difference.hpp"
#include "sclat/errors.hpp"
#include "sclat/fit.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace sclat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kExactFloor = 1e-12;

/// Physicists' Hermite polynomial H_k(y).
double hermite(int k, double y) {
    double h0 = 1.0, h1 = 2.0 * y;
    if (k == 0) return h0;
    for (int j = 1; j < k; ++j) {
        const double h2 = 2.0 * y * h1 - 2.0 * j * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

RateTable finish(std::vector<RateRow> rows) {
    RateTable t;
    t.rows = std::move(rows);
    std::vector<double> h, e;
    for (const RateRow& r : t.rows)
        if (r.error > kExactFloor) {
            h.push_back(r.hbar);
            e.push_back(r.error);
        }
    if (h.size() < 2) {
        t.exact = h.empty();
        t.flagged = !t.exact;
        return t;
    }
    const LineFit fit = fit_loglog(h, e);
    t.order = fit.slope;
    t.r2 = fit.r2;
    t.flagged = fit.r2 < 0.99;
    return t;
}

int even_ceil(double x) {
    const int m = static_cast<int>(std::ceil(x - 1e-9));
    return m + (m % 2);
}

/// θ ∈ [0,1) on the grid, recentred to [−½, ½) and rescaled by 1/ℏ.
double omega(const LatticeModel& m, std::size_t t, int axis) {
    const int d = m.digit(t, axis);
    const int M = m.points_per_axis();
    return (d < M / 2 ? d : d - M) / static_cast<double>(M) / m.hbar();
}

void require_periodic(const Smooth1D& f, double hbar) {
    const double half = 0.5 / hbar;
    for (int order = 0; order <= 2; ++order) {
        const cplx a = f.eval(order, -half);
        const cplx b = f.eval(order, half);
        if (std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a))) continue;
        throw BadParameter("limit study: " + f.name + " is not periodic on the rescaled torus of side " +
                           std::to_string(1.0 / hbar));
    }
}

void check_hbars(const std::vector<double>& hbars) {
    if (hbars.empty()) throw BadParameter("limit study: no hbar values");
    for (double h : hbars)
        if (!(h > 0.0 && h <= 1.0)) throw BadParameter("limit study: hbar must lie in (0, 1]");
}

} // namespace

Smooth1D plane_wave(double nu) {
    return {"exp(2*pi*i*" + std::to_string(nu) + "*x)",
            [nu](int k, double x) { return std::pow(cplx(0.0, kTwoPi * nu), k) * std::polar(1.0, kTwoPi * nu * x); },
            nu};
}

Smooth1D gaussian(double a) {
    return {"exp(-" + std::to_string(a) + "*x^2)",
            [a](int k, double x) {
                const double s = std::sqrt(a);
                return cplx((k % 2 ? -1.0 : 1.0) * std::pow(s, k) * hermite(k, s * x) * std::exp(-a * x * x));
            },
            0.0};
}

Smooth1D sine(double nu) {
    return {"sin(2*pi*" + std::to_string(nu) + "*x)",
            [nu](int k, double x) {
                return cplx(std::pow(kTwoPi * nu, k) * std::sin(kTwoPi * nu * x + k * std::numbers::pi / 2.0));
            },
            nu};
}

Smooth1D constant_function(cplx c) {
    return {"constant", [c](int k, double) { return k == 0 ? c : cplx(0.0); }, 0.0};
}

Smooth1D affine(double slope, double offset) {
    return {"affine", [slope, offset](int k, double x) {
                return cplx(k == 0 ? slope * x + offset : (k == 1 ? slope : 0.0));
            },
            0.0};
}

cplx SmoothFunction::derivative(const MultiIndex& alpha, std::span<const double> x) const {
    cplx v = 1.0;
    for (std::size_t j = 0; j < factors.size(); ++j) v *= factors[j].eval(alpha[static_cast<int>(j)], x[j]);
    return v;
}

std::string SmoothFunction::name() const {
    std::string s;
    for (std::size_t j = 0; j < factors.size(); ++j) s += (j ? " * " : "") + factors[j].name;
    return s;
}

RateTable difference_convergence(const SmoothFunction& f, const MultiIndex& alpha, const std::vector<double>& hbars,
                                 double window) {
    check_hbars(hbars);
    if (alpha.dim() != f.dim()) throw BadParameter("difference_convergence: multi-index dimension differs from f");
    const int n = f.dim();
    const MultiIndex zero = MultiIndex::zero(n);
    std::vector<RateRow> rows;
    for (double h : hbars) {
        const double L = window + (alpha.order() + 1) * h + 1.0;
        const LatticeModel m(n, h, even_ceil(2.0 * L / h));
        LatticeFunction s(m);
        std::vector<double> x(static_cast<std::size_t>(n));
        for (std::size_t p = 0; p < m.size(); ++p) {
            for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = m.coordinate(p, j);
            s[p] = f.derivative(zero, x);
        }
        const LatticeFunction d = forward_difference(s, alpha);
        double err = 0.0;
        for (std::size_t p = 0; p < m.size(); ++p) {
            bool inside = true;
            for (int j = 0; j < n; ++j) {
                x[static_cast<std::size_t>(j)] = m.coordinate(p, j);
                inside = inside && std::abs(x[static_cast<std::size_t>(j)]) <= window + 1e-12;
            }
            if (inside) err = std::max(err, std::abs(d[p] - f.derivative(alpha, x)));
        }
        rows.push_back({h, err});
    }
    return finish(std::move(rows));
}

RateTable rescaled_derivative_convergence(const SmoothFunction& f, const MultiIndex& beta,
                                          const std::vector<double>& hbars, double window, int points_per_unit) {
    check_hbars(hbars);
    if (beta.dim() != f.dim()) throw BadParameter("rescaled_derivative_convergence: multi-index dimension differs from f");
    if (points_per_unit < 2) throw BadParameter("rescaled_derivative_convergence: need at least 2 points per unit");
    const int n = f.dim();
    const MultiIndex zero = MultiIndex::zero(n);
    const cplx scale = std::pow(cplx(0.0, kTwoPi), -beta.order());
    std::vector<RateRow> rows;
    for (double h : hbars) {
        for (const Smooth1D& g : f.factors) require_periodic(g, h);
        const LatticeModel m(n, h, even_ceil(points_per_unit / h));
        TorusFunction s(m);
        std::vector<double> w(static_cast<std::size_t>(n));
        for (std::size_t t = 0; t < m.size(); ++t) {
            for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = omega(m, t, j);
            s[t] = f.derivative(zero, w);
        }
        const TorusFunction d = derivative_D(s, beta, DerivativeKind::falling);
        double err = 0.0;
        for (std::size_t t = 0; t < m.size(); ++t) {
            bool inside = true;
            for (int j = 0; j < n; ++j) {
                w[static_cast<std::size_t>(j)] = omega(m, t, j);
                inside = inside && std::abs(w[static_cast<std::size_t>(j)]) <= window + 1e-12;
            }
            if (inside) err = std::max(err, std::abs(d[t] - scale * f.derivative(beta, w)));
        }
        rows.push_back({h, err});
    }
    return finish(std::move(rows));
}

RateTable composition_limit_study(const SeparableSymbol& sigma, const SeparableSymbol& tau,
                                  const std::vector<double>& hbars, int N, double window) {
    check_hbars(hbars);
    if (N < 1 || N > 4) throw BadParameter("composition_limit_study: N must lie in [1, 4]");
    std::vector<RateRow> rows;
    for (double h : hbars) {
        require_periodic(sigma.xi_part, h);
        require_periodic(tau.xi_part, h);
        const double L = window + N * h + 1.0;
        const LatticeModel m(1, h, even_ceil(2.0 * L / h));
        const std::size_t P = m.size();
        auto tabulate = [&](const SeparableSymbol& s) {
            return Symbol::from_function(m, [&](std::size_t p, std::size_t t) {
                return s.x_part.eval(0, m.coordinate(p, 0)) * s.xi_part.eval(0, omega(m, t, 0));
            });
        };
        const std::vector<Symbol> terms = composition_terms(tabulate(sigma), tabulate(tau), N);
        double err = 0.0;
        for (std::size_t p = 0; p < P; ++p) {
            const double x = m.coordinate(p, 0);
            if (std::abs(x) > window + 1e-12) continue;
            for (std::size_t t = 0; t < P; ++t) {
                const double xi = omega(m, t, 0);
                if (std::abs(xi) > window + 1e-12) continue;
                cplx lattice = 0.0, euclid = 0.0;
                double fact = 1.0;
                for (int a = 0; a < N; ++a) {
                    if (a > 0) fact *= a;
                    lattice += terms[static_cast<std::size_t>(a)](p, t);
                    euclid += std::pow(cplx(0.0, kTwoPi), -a) / fact * sigma.x_part.eval(0, x) *
                              sigma.xi_part.eval(a, xi) * tau.x_part.eval(a, x) * tau.xi_part.eval(0, xi);
                }
                err = std::max(err, std::abs(lattice - euclid));
            }
        }
        rows.push_back({h, err});
    }
    return finish(std::move(rows));
}

void write_rate_csv(const RateTable& t, std::ostream& os) {
    os << "hbar,error,fitted_order,r2\n";
    os.precision(17);
    for (const RateRow& r : t.rows) os << r.hbar << ',' << r.error << ',' << t.order << ',' << t.r2 << '\n';
}

} // namespace sclat

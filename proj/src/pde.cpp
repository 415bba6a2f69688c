#include "sclat/pde.hpp"

#include "sclat/analysis.hpp"
#include "sclat/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <ostream>

namespace sclat {

namespace {

constexpr double kVanishFloor = 1e-10;

Eigen::Map<const Eigen::VectorXcd> as_vector(const LatticeFunction& f) {
    return {f.values.data(), static_cast<Eigen::Index>(f.size())};
}

LatticeFunction from_vector(const LatticeModel& m, const Eigen::VectorXcd& v) {
    return LatticeFunction(m, std::vector<cplx>(v.data(), v.data() + v.size()));
}

double sq(double x) { return x * x; }

/// φ(z) = (e^z − 1)/z with the removable point handled by a series.
cplx phi(cplx z) {
    if (std::abs(z) < 1e-8) return 1.0 + z / 2.0;
    return (std::exp(z) - 1.0) / z;
}

} // namespace

EllipticSolution solve_elliptic(const Symbol& sigma, const LatticeFunction& g, const EllipticOptions& opt) {
    require_same_model(sigma.model(), g.model, "solve_elliptic");
    const LatticeModel& m = g.model;
    const std::size_t N = m.size();
    EllipticSolution sol{LatticeFunction(m), 0.0, 0.0, opt.method};

    switch (opt.method) {
    case EllipticMethod::inverse_multiplier: {
        const bool theta_only = sigma.is_theta_only();
        if (!theta_only && !sigma.is_k_only())
            throw BadParameter("solve_elliptic: inverse_multiplier needs a theta-only or k-only symbol");
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t t = 0; t < N; ++t)
                if (std::abs(sigma(p, t)) < kVanishFloor)
                    throw SymbolVanishesOnGrid("solve_elliptic: |sigma| < 1e-10", p, t);
        if (theta_only) {
            TorusFunction G = forward_fourier(g);
            for (std::size_t t = 0; t < N; ++t) G[t] /= sigma(0, t);
            sol.f = inverse_fourier(G);
        } else {
            for (std::size_t p = 0; p < N; ++p) sol.f[p] = g[p] / sigma(p, 0);
        }
        break;
    }
    case EllipticMethod::parametrix: {
        const ParametrixResult par = parametrix({sigma}, opt.parametrix_order);
        Symbol v = par.V[0];
        for (std::size_t j = 1; j < par.V.size(); ++j) v = v + par.V[j];
        sol.f = apply(v, g);
        if (opt.defect_sweep) {
            const LatticeFunction af = apply(sigma, sol.f);
            LatticeFunction defect(m);
            for (std::size_t p = 0; p < N; ++p) defect[p] = g[p] - af[p];
            const LatticeFunction corr = apply(v, defect);
            for (std::size_t p = 0; p < N; ++p) sol.f[p] += corr[p];
        }
        break;
    }
    case EllipticMethod::direct: {
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(kernel_matrix(sigma));
        if (!lu.isInvertible())
            throw SingularMatrix("solve_elliptic: kernel matrix is singular (rank " + std::to_string(lu.rank()) + " of " +
                                 std::to_string(N) + ")");
        sol.f = from_vector(m, lu.solve(as_vector(g)));
        break;
    }
    }

    const LatticeFunction af = apply(sigma, sol.f);
    double num = 0.0;
    for (std::size_t p = 0; p < N; ++p) num += std::norm(af[p] - g[p]);
    const double gnorm = l2_norm(g);
    sol.residual = gnorm > 0.0 ? std::sqrt(num) / gnorm : std::sqrt(num);
    const double gw = weighted_l2_norm(g, opt.decay_weight);
    sol.weighted_ratio = gw > 0.0 ? weighted_l2_norm(sol.f, opt.decay_weight) / gw : 0.0;
    return sol;
}

ParabolicResult solve_parabolic(const ParabolicProblem& pb, bool require_certificate) {
    const LatticeModel& m = pb.generator.model();
    require_same_model(m, pb.w0.model, "solve_parabolic");
    if (!(pb.dt > 0.0) || !(pb.T >= pb.dt)) throw BadParameter("solve_parabolic: need dt > 0 and T >= dt");
    const double steps_real = pb.T / pb.dt;
    const auto steps = static_cast<std::size_t>(std::llround(steps_real));
    if (std::abs(steps_real - static_cast<double>(steps)) > 1e-9 * steps_real)
        throw BadParameter("solve_parabolic: T must be an integer multiple of dt");
    const std::size_t N = m.size();
    const Symbol& sd = pb.generator;

    auto source_at = [&](double t) {
        if (!pb.source) return LatticeFunction(m);
        LatticeFunction g = pb.source(t);
        require_same_model(m, g.model, "solve_parabolic source");
        return g;
    };

    ParabolicResult res;
    res.times.push_back(0.0);
    res.trajectory.push_back(pb.w0);
    std::vector<double> source_norm2;

    if (pb.scheme == ParabolicScheme::exact_multiplier) {
        const bool theta_only = sd.is_theta_only();
        if (!theta_only && !sd.is_k_only())
            throw BadParameter("solve_parabolic: exact_multiplier needs a theta-only or k-only generator");
        std::vector<cplx> decay(N), weight(N);
        for (std::size_t i = 0; i < N; ++i) {
            const cplx z = pb.dt * (theta_only ? sd(0, i) : sd(i, 0));
            decay[i] = std::exp(z);
            weight[i] = phi(z) * pb.dt;
        }
        for (std::size_t j = 0; j < steps; ++j) {
            const double t = static_cast<double>(j) * pb.dt;
            const LatticeFunction g = source_at(t);
            source_norm2.push_back(sq(l2_norm(g)));
            const LatticeFunction& w = res.trajectory.back();
            LatticeFunction next(m);
            if (theta_only) {
                TorusFunction W = forward_fourier(w);
                const TorusFunction G = forward_fourier(g);
                for (std::size_t i = 0; i < N; ++i) W[i] = decay[i] * W[i] + weight[i] * G[i];
                next = inverse_fourier(W);
            } else {
                for (std::size_t i = 0; i < N; ++i) next[i] = decay[i] * w[i] + weight[i] * g[i];
            }
            res.times.push_back(static_cast<double>(j + 1) * pb.dt);
            res.trajectory.push_back(std::move(next));
        }
    } else {
        const Eigen::MatrixXcd K = kernel_matrix(sd);
        const Eigen::MatrixXcd S = Eigen::MatrixXcd::Identity(K.rows(), K.cols()) - pb.dt * K;
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(S);
        if (!lu.isInvertible()) throw SingularStepMatrix("solve_parabolic: I - dt K is singular for dt = " + std::to_string(pb.dt));
        for (std::size_t j = 0; j < steps; ++j) {
            const double t = static_cast<double>(j) * pb.dt;
            const LatticeFunction g = source_at(t);
            source_norm2.push_back(sq(l2_norm(g)));
            const Eigen::VectorXcd rhs = as_vector(res.trajectory.back()) + pb.dt * as_vector(g);
            res.times.push_back(static_cast<double>(j + 1) * pb.dt);
            res.trajectory.push_back(from_vector(m, lu.solve(rhs)));
        }
    }

    // Energy certificate.
    EnergyReport& e = res.energy;
    const double r_order = sd.declared_class() ? sd.declared_class()->mu : 0.0;
    try {
        e.C2 = 2.0 * garding_constants(sd * cplx(-1.0), r_order / 2.0).C1;
        e.C2_origin = "garding";
    } catch (const FormUnboundedBelow&) {
        const Eigen::MatrixXcd K = kernel_matrix(sd);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (K + K.adjoint()), Eigen::EigenvaluesOnly);
        e.C2 = std::max(0.0, 2.0 * es.eigenvalues()(es.eigenvalues().size() - 1));
        e.C2_origin = "hermitian-part";
    }
    const double a = (e.C2 + 1.0) * pb.T;
    e.C = 1.0 + a * std::exp(a);

    // data[j] = ‖w0‖² + Σ_{i<j} dt‖g_i‖²
    std::vector<double> data(res.trajectory.size(), sq(l2_norm(pb.w0)));
    for (std::size_t j = 1; j < data.size(); ++j) data[j] = data[j - 1] + pb.dt * source_norm2[j - 1];
    for (const LatticeFunction& w : res.trajectory) e.energy.push_back(sq(l2_norm(w)));
    if (data.size() > 1) e.C_fit = data[1] > 0.0 ? e.energy[1] / data[1] : 0.0;

    e.certified = e.fit_certifies = e.stepwise_stable = true;
    for (std::size_t j = 0; j < data.size(); ++j) {
        e.bound.push_back(e.C * data[j]);
        if (e.certified && e.energy[j] > e.C * data[j] * (1.0 + 1e-12)) {
            e.certified = false;
            e.violating_step = j;
        }
        if (j >= 1 && e.energy[j] > e.C_fit * data[j] * (1.0 + 1e-12)) e.fit_certifies = false;
        if (j + 1 < data.size() && e.stepwise_stable) {
            const double lhs = std::sqrt(e.energy[j + 1]);
            const double rhs = std::sqrt(e.energy[j]) + pb.dt * std::sqrt(source_norm2[j]);
            if (lhs > rhs * (1.0 + 1e-12)) {
                e.stepwise_stable = false;
                e.unstable_step = j + 1;
            }
        }
    }
    if (require_certificate && !e.certified)
        throw EnergyCertificateFailed("solve_parabolic: energy exceeds C (|w0|^2 + sum dt |g|^2)", e.violating_step);
    return res;
}

void write_trajectory_csv(const ParabolicResult& r, std::ostream& os) {
    os << "t,k,re,im\n";
    os.precision(17);
    for (std::size_t j = 0; j < r.trajectory.size(); ++j)
        for (std::size_t p = 0; p < r.trajectory[j].size(); ++p)
            os << r.times[j] << ',' << p << ',' << r.trajectory[j][p].real() << ',' << r.trajectory[j][p].imag() << '\n';
}

} // namespace sclat

#include "sclat/lattice.hpp"

#include "sclat/errors.hpp"
#include "sclat/fft.hpp"
#include "sclat/simd.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace sclat {

struct LatticeModel::Impl {
    int n;
    double hbar;
    int M;
    std::size_t N;
    std::vector<std::size_t> stride;  // stride[j] = M^{n-1-j}
    std::vector<int> digits;          // N*n
    std::vector<double> abs_k;
};

LatticeModel::LatticeModel(int n, double hbar, int M) {
    if (n < 1) throw InvalidModel("lattice model: dimension must be >= 1");
    if (!(hbar > 0.0 && hbar <= 1.0)) throw InvalidModel("lattice model: hbar must lie in (0,1]");
    if (M < 2 || M % 2 != 0) throw InvalidModel("lattice model: M must be even and >= 2");
    std::size_t N = 1;
    for (int j = 0; j < n; ++j) {
        if (N > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(M) ||
            N * static_cast<std::size_t>(M) > (std::size_t{1} << 28))
            throw InvalidModel("lattice model: M^n is too large");
        N *= static_cast<std::size_t>(M);
    }
    auto impl = std::make_shared<Impl>();
    impl->n = n;
    impl->hbar = hbar;
    impl->M = M;
    impl->N = N;
    impl->stride.resize(static_cast<std::size_t>(n));
    std::size_t s = 1;
    for (int j = n - 1; j >= 0; --j) {
        impl->stride[static_cast<std::size_t>(j)] = s;
        s *= static_cast<std::size_t>(M);
    }
    impl->digits.resize(N * static_cast<std::size_t>(n));
    impl->abs_k.resize(N);
    for (std::size_t p = 0; p < N; ++p) {
        std::size_t rest = p;
        double sq = 0.0;
        for (int j = 0; j < n; ++j) {
            const std::size_t st = impl->stride[static_cast<std::size_t>(j)];
            const int d = static_cast<int>(rest / st);
            rest %= st;
            impl->digits[p * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = d;
            const int m = d < M / 2 ? d : d - M;
            sq += static_cast<double>(m) * m;
        }
        impl->abs_k[p] = hbar * std::sqrt(sq);
    }
    impl_ = std::move(impl);
}

int LatticeModel::dim() const noexcept { return impl_->n; }
double LatticeModel::hbar() const noexcept { return impl_->hbar; }
int LatticeModel::points_per_axis() const noexcept { return impl_->M; }
std::size_t LatticeModel::size() const noexcept { return impl_->N; }

int LatticeModel::digit(std::size_t p, int axis) const noexcept {
    return impl_->digits[p * static_cast<std::size_t>(impl_->n) + static_cast<std::size_t>(axis)];
}

int LatticeModel::index(std::size_t p, int axis) const noexcept {
    const int d = digit(p, axis);
    return d < impl_->M / 2 ? d : d - impl_->M;
}

double LatticeModel::theta(std::size_t t, int axis) const noexcept {
    return static_cast<double>(digit(t, axis)) / impl_->M;
}

double LatticeModel::abs_k(std::size_t p) const noexcept { return impl_->abs_k[p]; }
const std::vector<double>& LatticeModel::abs_k_table() const noexcept { return impl_->abs_k; }

std::size_t LatticeModel::point(std::span<const int> m) const {
    if (m.size() != static_cast<std::size_t>(impl_->n))
        throw BadParameter("lattice model: index vector has wrong length");
    std::size_t p = 0;
    const int M = impl_->M;
    for (int j = 0; j < impl_->n; ++j) {
        const int d = ((m[static_cast<std::size_t>(j)] % M) + M) % M;
        p += static_cast<std::size_t>(d) * impl_->stride[static_cast<std::size_t>(j)];
    }
    return p;
}

std::size_t LatticeModel::shift(std::size_t p, int axis, int steps) const noexcept {
    const int M = impl_->M;
    const int d = digit(p, axis);
    const int nd = ((d + steps) % M + M) % M;
    const std::size_t st = impl_->stride[static_cast<std::size_t>(axis)];
    return p - static_cast<std::size_t>(d) * st + static_cast<std::size_t>(nd) * st;
}

std::size_t LatticeModel::add(std::size_t p, std::size_t q) const noexcept {
    std::size_t r = 0;
    const int M = impl_->M;
    for (int j = 0; j < impl_->n; ++j) {
        const int d = (digit(p, j) + digit(q, j)) % M;
        r += static_cast<std::size_t>(d) * impl_->stride[static_cast<std::size_t>(j)];
    }
    return r;
}

std::size_t LatticeModel::sub(std::size_t p, std::size_t q) const noexcept {
    std::size_t r = 0;
    const int M = impl_->M;
    for (int j = 0; j < impl_->n; ++j) {
        const int d = (digit(p, j) - digit(q, j) + M) % M;
        r += static_cast<std::size_t>(d) * impl_->stride[static_cast<std::size_t>(j)];
    }
    return r;
}

std::size_t LatticeModel::negate(std::size_t p) const noexcept {
    std::size_t r = 0;
    const int M = impl_->M;
    for (int j = 0; j < impl_->n; ++j) {
        const int d = (M - digit(p, j)) % M;
        r += static_cast<std::size_t>(d) * impl_->stride[static_cast<std::size_t>(j)];
    }
    return r;
}

int LatticeModel::phase_index(std::size_t p, std::size_t t) const noexcept {
    long long s = 0;
    for (int j = 0; j < impl_->n; ++j) s += static_cast<long long>(digit(p, j)) * digit(t, j);
    return static_cast<int>(s % impl_->M);
}

double LatticeModel::box_radius() const noexcept { return impl_->hbar * impl_->M / 2.0; }

std::vector<double> LatticeModel::weights(double s) const {
    std::vector<double> w(impl_->N);
    for (std::size_t p = 0; p < impl_->N; ++p) w[p] = std::pow(1.0 + impl_->abs_k[p], s);
    return w;
}

bool LatticeModel::operator==(const LatticeModel& other) const noexcept {
    if (impl_ == other.impl_) return true;
    return impl_->n == other.impl_->n && impl_->M == other.impl_->M && impl_->hbar == other.impl_->hbar;
}

std::string LatticeModel::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "n=" << impl_->n << " hbar=" << impl_->hbar << " M=" << impl_->M;
    return os.str();
}

void require_same_model(const LatticeModel& a, const LatticeModel& b, const char* context) {
    if (a != b)
        throw ModelMismatch(std::string(context) + ": models differ (" + a.describe() + " vs " +
                            b.describe() + ")");
}

LatticeFunction::LatticeFunction(const LatticeModel& m) : model(m), values(m.size()) {}

LatticeFunction::LatticeFunction(const LatticeModel& m, std::vector<cplx> v)
    : model(m), values(std::move(v)) {
    if (values.size() != model.size()) throw ModelMismatch("lattice function: length differs from M^n");
}

LatticeFunction LatticeFunction::delta(const LatticeModel& m, std::size_t p) {
    LatticeFunction f(m);
    f.values.at(p) = 1.0;
    return f;
}

TorusFunction::TorusFunction(const LatticeModel& m) : model(m), values(m.size()) {}

TorusFunction::TorusFunction(const LatticeModel& m, std::vector<cplx> v) : model(m), values(std::move(v)) {
    if (values.size() != model.size()) throw ModelMismatch("torus function: length differs from M^n");
}

TorusFunction forward_fourier(const LatticeFunction& f) {
    TorusFunction F(f.model, f.values);
    fft::rows(F.values, f.model, fft::Direction::forward);
    return F;
}

LatticeFunction inverse_fourier(const TorusFunction& F) {
    LatticeFunction f(F.model, F.values);
    fft::rows(f.values, F.model, fft::Direction::backward);
    const double scale = 1.0 / static_cast<double>(F.model.size());
    for (auto& v : f.values) v *= scale;
    return f;
}

double weighted_l2_norm(const LatticeFunction& f, double s) {
    if (s == 0.0) return l2_norm(f);
    const std::vector<double> w = f.model.weights(2.0 * s);
    return std::sqrt(simd::weighted_sum_abs2(f.values.data(), w.data(), f.size()));
}

double weighted_lp_norm(const LatticeFunction& f, double p, double s) {
    if (!(p >= 1.0)) throw BadParameter("weighted_lp_norm: p must be >= 1");
    const std::vector<double>& ak = f.model.abs_k_table();
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::pow(1.0 + ak[i], s) * std::abs(f[i]));
        return m;
    }
    if (p == 2.0) return weighted_l2_norm(f, s);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += std::pow(std::pow(1.0 + ak[i], s) * std::abs(f[i]), p);
    return std::pow(acc, 1.0 / p);
}

double l2_norm(const LatticeFunction& f) { return std::sqrt(simd::sum_abs2(f.values.data(), f.size())); }

double l2_norm(const TorusFunction& F) {
    return std::sqrt(simd::sum_abs2(F.values.data(), F.size()) / static_cast<double>(F.size()));
}

cplx inner(const LatticeFunction& f, const LatticeFunction& g) {
    require_same_model(f.model, g.model, "inner");
    cplx s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]);
    return s;
}

cplx random_complex(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double re = u(rng);
    return {re, u(rng)};
}

LatticeFunction random_lattice_function(const LatticeModel& m, std::mt19937_64& rng) {
    LatticeFunction f(m);
    for (auto& v : f.values) v = random_complex(rng);
    return f;
}

TorusFunction random_torus_function(const LatticeModel& m, std::mt19937_64& rng) {
    TorusFunction F(m);
    for (auto& v : F.values) v = random_complex(rng);
    return F;
}

} // namespace sclat

#include "sclat/fit.hpp"

#include "sclat/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace sclat {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw BadParameter("fit_line: need at least two (x, y) pairs");
    const Eigen::Index n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        A(i, 0) = x[static_cast<std::size_t>(i)];
        A(i, 1) = 1.0;
        b(i) = y[static_cast<std::size_t>(i)];
    }
    const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
    const double mean = b.mean();
    const double ss_tot = (b.array() - mean).square().sum();
    const double ss_res = (A * c - b).squaredNorm();
    return {c(0), c(1), ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0};
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (y[i] <= 0.0 || x[i] <= 0.0) continue;
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    return fit_line(lx, ly);
}

} // namespace sclat

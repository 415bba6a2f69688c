#include "sclat/errors.hpp"
#include "sclat/fit.hpp"
#include "sclat/limit.hpp"

#include <doctest.h>

#include <sstream>

using namespace sclat;

TEST_SUITE("limit") {

TEST_CASE("line fits") {
    const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
    const LineFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.r2 == doctest::Approx(1.0));
    const std::vector<double> h{0.5, 0.25, 0.125}, e{0.25, 0.0625, 0.015625};
    CHECK(fit_loglog(h, e).slope == doctest::Approx(2.0));
    CHECK_THROWS_AS(fit_line(std::vector<double>{1}, std::vector<double>{1}), BadParameter);
}

TEST_CASE("smooth functions carry exact derivatives") {
    const Smooth1D g = gaussian(1.0);
    CHECK(g.eval(1, 0.5).real() == doctest::Approx(-1.0 * std::exp(-0.25)));
    CHECK(g.eval(2, 0.0).real() == doctest::Approx(-2.0));
    const SmoothFunction f{{sine(1.0), affine(2.0, 1.0)}};
    const double x[] = {0.25, 3.0};
    CHECK(f.derivative(MultiIndex{1, 1}, x).real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.derivative(MultiIndex{0, 1}, x).real() == doctest::Approx(2.0));
    CHECK(f.derivative(MultiIndex{0, 2}, x).real() == doctest::Approx(0.0));
}

TEST_CASE("affine functions are differenced exactly") {
    const RateTable t = difference_convergence({{affine(3.0, 1.0)}}, MultiIndex{1}, {0.5, 0.25, 0.125});
    CHECK(t.exact);
}

TEST_CASE("first differences converge at order one") {
    const RateTable t = difference_convergence({{sine(1.0), gaussian(1.0)}}, MultiIndex{1, 0}, {0.25, 0.125, 0.0625});
    CHECK(t.order == doctest::Approx(1.0).epsilon(0.1));
    CHECK(!t.flagged);
}

TEST_CASE("rescaled derivatives require periodic data") {
    CHECK_THROWS_AS(rescaled_derivative_convergence({{gaussian(1.0)}}, MultiIndex{1}, {0.5}), BadParameter);
    CHECK_THROWS_AS(rescaled_derivative_convergence({{plane_wave(1.0)}}, MultiIndex{1}, {0.3}), BadParameter);
}

TEST_CASE("composition study") {
    const SeparableSymbol sigma{gaussian(1.0), plane_wave(1.0)}, tau{sine(0.25), constant_function(1.0)};
    const RateTable t = composition_limit_study(sigma, tau, {0.25, 0.125, 0.0625}, 2);
    CHECK(t.order == doctest::Approx(1.0).epsilon(0.1));
    std::ostringstream os;
    write_rate_csv(t, os);
    CHECK(os.str().rfind("hbar,error,fitted_order,r2\n", 0) == 0);
    CHECK_THROWS_AS(composition_limit_study(sigma, tau, {0.5}, 5), BadParameter);
}

}

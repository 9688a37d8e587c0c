#include <cmath>
#include <numeric>

#include "doctest.h"
#include "rmtlab/quadrature.hpp"

using namespace rmtlab;

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {1, 2, 5, 16, 40}) {
        Rule r = gauss_legendre(n);
        CHECK(std::accumulate(r.w.begin(), r.w.end(), 0.0) == doctest::Approx(2.0).epsilon(1e-14));
        for (int deg = 0; deg <= 2 * n - 1; ++deg) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += r.w[k] * std::pow(r.x[k], deg);
            double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
            CAPTURE(n);
            CAPTURE(deg);
            CHECK(std::abs(s - exact) < 1e-13);
        }
    }
    CHECK_THROWS(gauss_legendre(0));
}

TEST_CASE("gauss-hermite rule reproduces normal moments") {
    Rule r = gauss_hermite_normal(12);
    double dfact = 1.0;
    for (int m = 0; m <= 11; ++m) {
        double s2 = 0.0, s1 = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            s2 += r.w[k] * std::pow(r.x[k], 2 * m);
            s1 += r.w[k] * std::pow(r.x[k], 2 * m + 1);
        }
        CHECK(std::abs(s2 / dfact - 1.0) < 1e-11);
        CHECK(std::abs(s1) < 1e-9 * dfact);
        dfact *= 2 * m + 1;
    }
}

TEST_CASE("composite rule and adaptive integration") {
    Rule c = composite(0.0, 3.0, 7);
    CHECK(c.size() == 7 * 16);
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) s += c.w[k] * std::exp(c.x[k]);
    CHECK(std::abs(s - (std::exp(3.0) - 1.0)) < 1e-12);

    CHECK(std::abs(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) - 2.0) < 1e-12);
    CHECK(std::abs(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10) - 2.0 / 3.0) < 1e-8);
    CHECK(std::abs(integrate([](double x) { return std::cos(40.0 * x); }, 0.0, 1.0) - std::sin(40.0) / 40.0) <
          1e-12);
}

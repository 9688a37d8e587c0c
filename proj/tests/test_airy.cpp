#include <boost/math/special_functions/airy.hpp>
#include <cmath>

#include "doctest.h"
#include "rmtlab/airy.hpp"

using namespace rmtlab;

TEST_CASE("Ai(0) and Ai'(0)") {
    CHECK(std::abs(airy(0.0) - 0.3550280539) < 1e-8);
    CHECK(std::abs(airy_prime(0.0) + 0.2588194038) < 1e-8);
}

TEST_CASE("airy functions agree with an independent library") {
    for (double x = kAiryMin; x <= 10.0; x += 0.37) {
        CAPTURE(x);
        const double ai = boost::math::airy_ai(x), aip = boost::math::airy_ai_prime(x);
        CHECK(std::abs(airy(x) - ai) < 1e-10 * std::max(1.0, std::abs(ai)) + 1e-13);
        CHECK(std::abs(airy_prime(x) - aip) < 1e-10 * std::max(1.0, std::abs(aip)) + 1e-13);
    }
    for (double x : {12.0, 20.0, 29.0}) {
        CAPTURE(x);
        CHECK(std::abs(airy(x) / boost::math::airy_ai(x) - 1.0) < 1e-6);
    }
    CHECK_THROWS_AS(airy(kAiryMin - 1.0), std::out_of_range);
    CHECK_THROWS_AS(airy(kAiryMax + 1.0), std::out_of_range);
}

TEST_CASE("Airy equation residual") {
    const double h = 1e-2;
    for (double x = -8.0; x <= 6.0; x += 0.5) {
        CAPTURE(x);
        double second = (-airy_prime(x + 2 * h) + 8 * airy_prime(x + h) - 8 * airy_prime(x - h) +
                         airy_prime(x - 2 * h)) / (12.0 * h);
        CHECK(std::abs(second - x * airy(x)) < 1e-6);
    }
}

TEST_CASE("airy kernel: closed form agrees with the integral form") {
    CHECK(std::abs(airy_kernel(0.0, 1.0) - airy_kernel_integral(0.0, 1.0)) < 1e-8);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            double x = -4.0 + 8.0 * i / 19.0, y = -4.0 + 8.0 * j / 19.0;
            worst = std::max(worst, std::abs(airy_kernel(x, y) - airy_kernel_integral(x, y)));
        }
    CHECK(worst < 1e-8);
}

TEST_CASE("airy kernel is symmetric with the derivative formula on the diagonal") {
    for (double x : {-3.0, -0.5, 0.0, 1.2, 4.0}) {
        CAPTURE(x);
        CHECK(airy_kernel(x, x + 0.7) == doctest::Approx(airy_kernel(x + 0.7, x)).epsilon(1e-12));
        double ai = boost::math::airy_ai(x), aip = boost::math::airy_ai_prime(x);
        CHECK(std::abs(airy_kernel(x, x) - (aip * aip - x * ai * ai)) < 1e-10);
        CHECK(std::abs(airy_kernel(x, x + 1e-7) - airy_kernel(x, x)) < 1e-6);
    }
    CHECK(airy_kernel(31.0, 0.0) == 0.0);
}

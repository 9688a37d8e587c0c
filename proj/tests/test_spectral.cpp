#include <cmath>

#include "doctest.h"
#include "rmtlab/bulk_kernel.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/spectral.hpp"

using namespace rmtlab;

TEST_CASE("spectrum scaling") {
    HermitianMatrix h = sample_wigner(EnsembleSpec{16, ElementLaw{}, 0.0, 3});
    auto raw = eigenvalues(h, SpectrumScale::unscaled).values;
    auto up = eigenvalues(h, SpectrumScale::sqrt_n_x).values;
    auto down = eigenvalues(h, SpectrumScale::x_over_sqrt_n).values;
    for (int k = 0; k < 16; ++k) {
        CHECK(up[k] == doctest::Approx(4.0 * raw[k]).epsilon(1e-14));
        CHECK(down[k] == doctest::Approx(raw[k] / 4.0).epsilon(1e-14));
    }
}

TEST_CASE("stieltjes transform of the zero matrix") {
    std::vector<double> zeros(7, 0.0);
    cplx m = stieltjes_mn(zeros, cplx(0.0, 1.0));
    CHECK(std::abs(m - cplx(0.0, 1.0)) < 1e-15);
}

TEST_CASE("semicircle transform closed form and defining equation") {
    CHECK(std::abs(semicircle_transform(cplx(0.0, 1.0)) - cplx(0.0, 2.0 * (std::sqrt(2.0) - 1.0))) < 1e-14);
    for (cplx z : {cplx(0.3, 0.2), cplx(-1.5, 0.01), cplx(2.0, 3.0), cplx(0.0, 0.5)}) {
        CAPTURE(z);
        cplx m = semicircle_transform(z);
        CHECK(m.imag() > 0.0);
        // sigma^2 = 1/4:  m^2/4 + z m + 1 = 0
        CHECK(std::abs(m * m / 4.0 + z * m + 1.0) < 1e-13);
        cplx quad = 0.0;
        // direct integral in the variable x = sin(t) to remove the square-root endpoints
        Rule t = composite(-M_PI / 2, M_PI / 2, 64);
        for (std::size_t k = 0; k < t.size(); ++k) {
            double x = std::sin(t.x[k]);
            quad += t.w[k] * wigner_u(x) * std::cos(t.x[k]) / (x - z);
        }
        CHECK(std::abs(quad - m) < 1e-9);
    }
}

TEST_CASE("limiting densities") {
    CHECK(semicircle_density(0.0, 0.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-15));
    CHECK(semicircle_density(3.0, 1.0) == 0.0);
    for (double kappa : {0.0, 0.5, 1.0, 2.0}) {
        double r = std::sqrt(1.0 + 4.0 * kappa);
        CHECK(integrate([&](double x) { return semicircle_density(x, kappa); }, -r, r, 1e-10) ==
              doctest::Approx(1.0).epsilon(1e-6));
    }
    CHECK(semicircle_average([](double x) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(semicircle_average([](double x) { return x * x; }) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(std::abs(semicircle_average([](double x) { return x * x * x; })) < 1e-14);
}

TEST_CASE("limiting bulk parameters") {
    auto p0 = limiting_bulk_params(0.0, 0.0);
    CHECK(p0.first == 0.0);
    CHECK(p0.second == doctest::Approx(2.0));
    auto p1 = limiting_bulk_params(0.0, 1.0);
    CHECK(p1.first == 0.0);
    CHECK(p1.second == doctest::Approx(2.0 * std::sqrt(5.0) / 5.0).epsilon(1e-14));
    CHECK_THROWS(limiting_bulk_params(3.0, 1.0));
    for (double d : {-1.0, 0.0, 0.3, 1.5}) {
        for (double kappa : {0.5, 1.0, 2.0}) {
            CAPTURE(d);
            CAPTURE(kappa);
            auto [delta, beta] = limiting_bulk_params(d, kappa);
            cplx w(delta, beta);
            CHECK(std::abs(semicircle_transform(d + kappa * w) - w) < 1e-12);
            CHECK(beta / M_PI == doctest::Approx(semicircle_density(d, kappa)).epsilon(1e-12));
        }
    }
}

TEST_CASE("empirical stieltjes transform approaches the semicircle transform") {
    HermitianMatrix x = sample_wigner(EnsembleSpec{400, ElementLaw::parse("rademacher"), 0.0, 12});
    Spectrum s = eigenvalues(x, SpectrumScale::x_over_sqrt_n);
    for (cplx z : {cplx(0.0, 1.0), cplx(0.5, 0.5), cplx(-0.3, 0.2)})
        CHECK(std::abs(stieltjes_mn(s, z) - semicircle_transform(z)) < 0.02);
    CHECK(s.values.back() < 1.1);
    CHECK(s.values.front() > -1.1);
}

TEST_CASE("linear statistic is centred") {
    std::vector<double> nu;
    const int n = 200;
    // quantiles of the semicircle make the statistic small
    HermitianMatrix x = sample_wigner(EnsembleSpec{n, ElementLaw{}, 0.0, 2});
    nu = eigenvalues(x, SpectrumScale::sqrt_n_x).values;
    double lin = linear_statistic(nu, [](double t) { return t * t; });
    CHECK(std::abs(lin) < 3.0);
    double shifted = linear_statistic(nu, [](double t) { return t * t; }, 0.25);
    double direct = 0.0;
    for (double v : nu) direct += (v / n) * (v / n);
    CHECK(shifted == doctest::Approx(direct - n * 0.25).epsilon(1e-12));
}

TEST_CASE("resolvent identities and estimates on random matrices") {
    int count = 0;
    for (int n = 3; n <= 12; ++n) {
        for (std::uint64_t s = 0; s < 10; ++s) {
            const char* law = s % 2 ? "rademacher" : "gaussian";
            HermitianMatrix x = sample_wigner(EnsembleSpec{n, ElementLaw::parse(law), 0.0, 1000 * n + s});
            CounterRng rng(s, 77, n, 0);
            for (int k = 0; k < 5; ++k) {
                cplx z(4.0 * rng.uniform() - 2.0, 0.05 + 2.0 * rng.uniform());
                ResolventResiduals r = resolvent_identities_check(x, z);
                CAPTURE(n);
                CAPTURE(z);
                CHECK(r.identities_hold(1e-9));
                CHECK(r.inequalities_hold(1e-12));
                ++count;
            }
        }
    }
    CHECK(count == 500);
}

#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

// E[prod_j (c_j + i sqrt(S) G)], G standard normal, from the moments (2m-1)!!.
inline std::complex<double> gaussian_product_mean(const std::vector<double>& c, double S) {
    using C = std::complex<double>;
    std::vector<C> poly{C(1.0)};
    const C slope(0.0, std::sqrt(S));
    for (double cj : c) {
        std::vector<C> next(poly.size() + 1, C(0.0));
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k] * cj;
            next[k + 1] += poly[k] * slope;
        }
        poly = std::move(next);
    }
    C mean = 0.0;
    double moment = 1.0;
    for (std::size_t k = 0; k < poly.size(); k += 2) {
        mean += poly[k] * moment;
        moment *= static_cast<double>(k + 1);
    }
    return mean;
}

// Kernel of n non-intersecting Brownian motions started at nu, at time S, by
// residues at nu_k / S and a Gaussian expectation for the w integral.
inline double hermite_kernel(const std::vector<double>& nu, double S, double u, double v) {
    const std::size_t n = nu.size();
    std::complex<double> total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> c;
        double denom = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            c.push_back(v - nu[j]);
            denom *= nu[k] - nu[j];
        }
        total += std::exp((2.0 * u * nu[k] - nu[k] * nu[k]) / (2.0 * S)) * gaussian_product_mean(c, S) / denom;
    }
    return (total * std::exp(-v * v / (2.0 * S)) / std::sqrt(2.0 * M_PI * S)).real();
}

}  // namespace oracle

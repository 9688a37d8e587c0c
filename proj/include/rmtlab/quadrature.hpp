#pragma once

#include <functional>
#include <vector>

namespace rmtlab {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
};

// n-point Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(int n);
// 16-point rule, computed once.
const Rule& gl16();
// n-point Gauss-Hermite rule for the standard normal weight exp(-x^2/2)/sqrt(2 pi).
Rule gauss_hermite_normal(int n);

// Composite 16-point rule over consecutive panel edges.
Rule composite(const std::vector<double>& edges);
Rule composite(double a, double b, int panels);

// Integral of f over [a, b] by composite Gauss-Legendre, doubling the panel
// count until the relative change drops below tol.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                 int start_panels = 4, int max_panels = 1 << 14);

}  // namespace rmtlab

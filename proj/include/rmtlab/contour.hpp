#pragma once

#include <complex>
#include <vector>

namespace rmtlab {

using cplx = std::complex<double>;

struct ContourNodes {
    std::vector<cplx> z;    // nodes on the contour
    std::vector<cplx> dz;   // quadrature weight times dz/dt
    void append(const ContourNodes& other);
};

// Panel edges on [0, T]: widths min(h0, 8 / rate(t)) with rate evaluated at each left edge.
template <class Rate>
std::vector<double> graded_edges(double t_max, double h0, Rate rate) {
    std::vector<double> e{0.0};
    while (e.back() < t_max) {
        double r = rate(e.back());
        double h = r > 0.0 ? std::min(h0, 8.0 / r) : h0;
        e.push_back(std::min(t_max, e.back() + h));
    }
    return e;
}

// Cauchy integral sum_k dw_k H_k / (w_k - z) over a vertical line Re w = x0
// traversed upward. For z within sigma of the line a Gaussian subtraction
// removes the near-singularity; h_at_z must then be the analytic
// continuation of H to z.
cplx vertical_cauchy(const std::vector<cplx>& w, const std::vector<cplx>& dw, const std::vector<cplx>& hw,
                     double x0, cplx z, cplx h_at_z, double sigma);

}  // namespace rmtlab

#include "rmtlab/contour.hpp"

#include <cmath>
#include <numbers>

namespace rmtlab {

void ContourNodes::append(const ContourNodes& other) {
    z.insert(z.end(), other.z.begin(), other.z.end());
    dz.insert(dz.end(), other.dz.begin(), other.dz.end());
}

cplx vertical_cauchy(const std::vector<cplx>& w, const std::vector<cplx>& dw, const std::vector<cplx>& hw,
                     double x0, cplx z, cplx h_at_z, double sigma) {
    const std::size_t m = w.size();
    cplx sum = 0.0;
    double dist = z.real() - x0;
    if (std::abs(dist) >= sigma) {
        for (std::size_t k = 0; k < m; ++k) sum += dw[k] * hw[k] / (w[k] - z);
        return sum;
    }
    const double inv_s2 = 1.0 / (sigma * sigma);
    for (std::size_t k = 0; k < m; ++k) {
        cplx diff = w[k] - z;
        cplx g = std::exp(diff * diff * inv_s2);
        cplx num = hw[k] - h_at_z * g;
        if (diff == cplx(0.0)) continue;
        sum += dw[k] * num / diff;
    }
    // the Gaussian's own Cauchy integral over the full line is exactly +-i pi
    double side = dist < 0.0 ? 1.0 : -1.0;
    return sum + h_at_z * cplx(0.0, side * std::numbers::pi);
}

}  // namespace rmtlab

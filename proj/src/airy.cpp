#include "rmtlab/airy.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rmtlab/contour.hpp"
#include "rmtlab/quadrature.hpp"

namespace rmtlab {

namespace {

// Height of the integration line: the saddle sqrt(x) for x > 1, and a low line
// for x < -1 where a height of one would cost e^{|x|} in cancellation.
double line_height(double x) {
    if (x > 1.0) return std::sqrt(x);
    if (x < -1.0) return 1.0 / std::sqrt(-x);
    return 1.0;
}

}  // namespace

AiryPair airy_pair(double x) {
    if (!(x >= kAiryMin && x <= kAiryMax)) throw std::out_of_range("airy argument outside [-15, 30]");
    const double c = line_height(x);
    // |integrand| = exp(c^3/3 - x c - c s^2); cut where it has fallen by e^-40
    const double s_max = std::sqrt(40.0 / c);
    auto rate = [&](double s) { return s * s + std::abs(x - c * c) + 1.0; };
    std::vector<double> edges = graded_edges(s_max, 0.5, [&](double s) { return 1.5 * rate(s); });
    std::vector<double> all;
    for (std::size_t k = edges.size(); k-- > 1;) all.push_back(-edges[k]);
    for (double e : edges) all.push_back(e);
    Rule r = composite(all);
    std::complex<double> sum_ai = 0.0, sum_aip = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
        std::complex<double> z(r.x[k], c);
        std::complex<double> e = std::exp(std::complex<double>(0.0, 1.0) * (x * z + z * z * z / 3.0));
        sum_ai += r.w[k] * e;
        sum_aip += r.w[k] * std::complex<double>(0.0, 1.0) * z * e;
    }
    return {sum_ai.real() / (2.0 * std::numbers::pi), sum_aip.real() / (2.0 * std::numbers::pi)};
}

double airy(double x) { return airy_pair(x).ai; }
double airy_prime(double x) { return airy_pair(x).aip; }

double airy_kernel(double x, double y) {
    if (x > kAiryMax || y > kAiryMax) return 0.0;
    if (std::abs(x - y) < 1e-6) {
        double m = 0.5 * (x + y);
        AiryPair p = airy_pair(m);
        return p.aip * p.aip - m * p.ai * p.ai;
    }
    AiryPair px = airy_pair(x), py = airy_pair(y);
    return (px.ai * py.aip - px.aip * py.ai) / (x - y);
}

double airy_kernel_integral(double x, double y) {
    double t_max = kAiryMax - std::max(x, y);
    if (t_max <= 0.0) return 0.0;
    return integrate([&](double t) { return airy(x + t) * airy(y + t); }, 0.0, t_max, 1e-12, 8, 1 << 10);
}

}  // namespace rmtlab

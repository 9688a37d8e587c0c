#include "rmtlab/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rmtlab {

Rule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("rule order must be >= 1");
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

const Rule& gl16() {
    static const Rule rule = gauss_legendre(16);
    return rule;
}

Rule gauss_hermite_normal(int n) {
    if (n < 1) throw std::invalid_argument("rule order must be >= 1");
    // Golub-Welsch on the Jacobi matrix of the probabilists' Hermite polynomials
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) j(k, k - 1) = j(k - 1, k) = std::sqrt(static_cast<double>(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int k = 0; k < n; ++k) {
        r.x[k] = es.eigenvalues()(k);
        double v0 = es.eigenvectors()(0, k);
        r.w[k] = v0 * v0;
    }
    return r;
}

Rule composite(const std::vector<double>& edges) {
    const Rule& g = gl16();
    Rule r;
    if (edges.size() < 2) return r;
    r.x.reserve(16 * (edges.size() - 1));
    r.w.reserve(16 * (edges.size() - 1));
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        double half = 0.5 * (edges[p + 1] - edges[p]);
        double mid = 0.5 * (edges[p + 1] + edges[p]);
        for (std::size_t k = 0; k < g.size(); ++k) {
            r.x.push_back(mid + half * g.x[k]);
            r.w.push_back(half * g.w[k]);
        }
    }
    return r;
}

Rule composite(double a, double b, int panels) {
    std::vector<double> edges(panels + 1);
    for (int p = 0; p <= panels; ++p) edges[p] = a + (b - a) * p / panels;
    return composite(edges);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int start_panels, int max_panels) {
    auto eval = [&](int panels) {
        Rule r = composite(a, b, panels);
        double s = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k) s += r.w[k] * f(r.x[k]);
        return s;
    };
    int panels = std::max(1, start_panels);
    double prev = eval(panels);
    while (panels < max_panels) {
        panels *= 2;
        double cur = eval(panels);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace rmtlab

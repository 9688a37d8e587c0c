#include "rmtlab/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rmtlab/airy.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/rng.hpp"

namespace rmtlab {

namespace {

constexpr double kPi = std::numbers::pi;

template <class Entry>
double det_nodes(const std::vector<double>& w, Entry entry) {
    const int m = static_cast<int>(w.size());
    Eigen::MatrixXd a(m, m);
    std::vector<double> sw(m);
    for (int i = 0; i < m; ++i) sw[i] = std::sqrt(w[i]);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = (i == j ? 1.0 : 0.0) - sw[i] * entry(i, j) * sw[j];
    return a.partialPivLu().determinant();
}

template <class Build>
DetResult doubling(const Domain& d, int start, double tol, int cap, Build build) {
    std::vector<double> x, w;
    int order = std::max(8, start);
    domain_nodes(d, order, x, w);
    double prev = build(x, w);
    while (true) {
        int next = 2 * order;
        domain_nodes(d, next, x, w);
        if (static_cast<int>(x.size()) > cap) break;
        double cur = build(x, w);
        double gap = std::abs(cur - prev);
        if (gap <= tol) return {cur, next, gap};
        prev = cur;
        order = next;
    }
    throw std::runtime_error("Fredholm determinant did not converge below the order cap");
}

}  // namespace

Domain Domain::interval(double a, double b, std::vector<double> breaks) {
    if (!(b > a)) throw std::invalid_argument("empty interval");
    Domain d;
    d.a = a;
    d.b = b;
    for (double c : breaks)
        if (c > a && c < b) d.breaks.push_back(c);
    std::sort(d.breaks.begin(), d.breaks.end());
    return d;
}

Domain Domain::from(double a, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
    Domain d;
    d.a = a;
    d.half_line = true;
    d.scale = scale;
    return d;
}

void domain_nodes(const Domain& d, int order, std::vector<double>& x, std::vector<double>& w) {
    x.clear();
    w.clear();
    const Rule g = gauss_legendre(order);
    if (d.half_line) {
        for (std::size_t k = 0; k < g.size(); ++k) {
            double u = 0.5 * (g.x[k] + 1.0);
            x.push_back(d.a - d.scale * std::log(u));
            w.push_back(0.5 * g.w[k] * d.scale / u);
        }
        return;
    }
    std::vector<double> e{d.a};
    for (double c : d.breaks) e.push_back(c);
    e.push_back(d.b);
    for (std::size_t p = 0; p + 1 < e.size(); ++p) {
        double mid = 0.5 * (e[p] + e[p + 1]), half = 0.5 * (e[p + 1] - e[p]);
        for (std::size_t k = 0; k < g.size(); ++k) {
            x.push_back(mid + half * g.x[k]);
            w.push_back(half * g.w[k]);
        }
    }
}

DetResult nystrom_det(const FredholmProblem& p) {
    if (p.order < 8) throw std::invalid_argument("order must be at least 8");
    return doubling(p.domain, p.order, p.tolerance, p.max_order,
                    [&](const std::vector<double>& x, const std::vector<double>& w) {
                        std::vector<double> ww = w;
                        if (p.weight)
                            for (std::size_t i = 0; i < x.size(); ++i) {
                                double phi = p.weight(x[i]);
                                if (phi < 0.0 || phi > 1.0) throw std::domain_error("weight outside [0, 1]");
                                ww[i] *= phi;
                            }
                        return det_nodes(ww, [&](int i, int j) { return p.kernel(x[i], x[j]); });
                    });
}

double sine_kernel_real(double b, double x, double y) {
    double t = x - y;
    if (std::abs(t) < 1e-8) return b / kPi * (1.0 - b * b * t * t / 6.0);
    return std::sin(b * t) / (kPi * t);
}

DetResult sine_gap(double b, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("gap length must be positive");
    FredholmProblem p;
    p.kernel = [b](double x, double y) { return sine_kernel_real(b, x, y); };
    p.domain = Domain::interval(-0.5 * s, 0.5 * s);
    return nystrom_det(p);
}

DetResult tw_cdf_detail(double t) {
    if (!(t >= -10.0 && t <= 8.0)) throw std::out_of_range("tw_cdf argument outside [-10, 8]");
    const Domain d = Domain::from(t, std::max(2.0, (12.0 - t) / 3.0));
    return doubling(d, 16, 1e-10, 2048, [](const std::vector<double>& x, const std::vector<double>& w) {
        const std::size_t m = x.size();
        std::vector<double> ai(m, 0.0), aip(m, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            if (x[i] <= kAiryMax) {
                AiryPair p = airy_pair(x[i]);
                ai[i] = p.ai;
                aip[i] = p.aip;
            }
        return det_nodes(w, [&](int i, int j) {
            if (i == j) return aip[i] * aip[i] - x[i] * ai[i] * ai[i];
            return (ai[i] * aip[j] - aip[i] * ai[j]) / (x[i] - x[j]);
        });
    });
}

double tw_cdf(double t) { return tw_cdf_detail(t).value; }

double tw_mean(double step) {
    const int m = static_cast<int>(std::lround(18.0 / step));
    double prev = tw_cdf(-10.0), mean = 0.0;
    for (int k = 1; k <= m; ++k) {
        double t = -10.0 + 18.0 * k / m;
        double cur = tw_cdf(t);
        mean += (t - 9.0 / m) * (cur - prev);
        prev = cur;
    }
    return mean;
}

double bump(double x) {
    double s = 1.0 - std::abs(x);
    if (s <= 0.0) return 0.0;
    return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

DetResult laplace_functional(const RealKernel& k, const std::function<double(double)>& psi, const Domain& d,
                             double tolerance) {
    FredholmProblem p;
    p.kernel = k;
    p.domain = d;
    p.tolerance = tolerance;
    p.weight = [&psi](double x) {
        double v = psi(x);
        if (v < 0.0) throw std::domain_error("psi must be nonnegative");
        return -std::expm1(-v);
    };
    return nystrom_det(p);
}

namespace {

template <class Sum>
double converge(const Domain& d, double tol, Sum sum) {
    std::vector<double> x, w;
    int order = 16;
    domain_nodes(d, order, x, w);
    double prev = sum(x, w);
    for (order = 32; order <= 2048; order *= 2) {
        domain_nodes(d, order, x, w);
        double cur = sum(x, w);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw std::runtime_error("quadrature did not converge");
}

}  // namespace

double hs_norm(const RealKernel& k, const Domain& d, double tol) {
    double sq = converge(d, tol, [&](const std::vector<double>& x, const std::vector<double>& w) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < x.size(); ++j) {
                double v = k(x[i], x[j]);
                s += w[i] * w[j] * v * v;
            }
        return s;
    });
    return std::sqrt(sq);
}

double trace(const RealKernel& k, const Domain& d, double tol) {
    return converge(d, tol, [&](const std::vector<double>& x, const std::vector<double>& w) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * k(x[i], x[i]);
        return s;
    });
}

double legendre_orthonormal(int k, double x) {
    double p0 = 1.0, p1 = x;
    if (k == 0) return std::sqrt(0.5);
    for (int j = 2; j <= k; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    return std::sqrt(k + 0.5) * p1;
}

double FiniteRankOperator::operator()(double x, double y) const {
    const int m = static_cast<int>(coeffs.rows());
    Eigen::VectorXd px(m), py(m);
    for (int k = 0; k < m; ++k) {
        px[k] = legendre_orthonormal(k, x);
        py[k] = legendre_orthonormal(k, y);
    }
    return px.dot(coeffs * py);
}

RealKernel FiniteRankOperator::kernel() const {
    return [c = *this](double x, double y) { return c(x, y); };
}

double FiniteRankOperator::det_i_minus() const {
    const auto m = coeffs.rows();
    return (Eigen::MatrixXd::Identity(m, m) - coeffs).determinant();
}

FiniteRankOperator random_finite_rank(int rank, int basis, double scale, std::uint64_t seed) {
    if (rank < 0 || rank > basis) throw std::invalid_argument("rank must lie in [0, basis]");
    CounterRng rng(seed, 11, static_cast<std::uint64_t>(rank), static_cast<std::uint64_t>(basis));
    Eigen::MatrixXd l(basis, rank), r(basis, rank);
    for (int i = 0; i < basis; ++i)
        for (int j = 0; j < rank; ++j) {
            l(i, j) = rng.normal();
            r(i, j) = rng.normal();
        }
    FiniteRankOperator op{l * r.transpose()};
    double nrm = op.coeffs.norm();
    if (nrm > 0.0) op.coeffs *= scale / nrm;
    return op;
}

PerturbationBound det_perturbation_bound(const FiniteRankOperator& a, const FiniteRankOperator& b) {
    const double diff = (a.coeffs - b.coeffs).norm();
    const double hb = b.hs_norm();
    const double ta = a.trace(), tb = b.trace();
    PerturbationBound out;
    out.lhs = std::abs(a.det_i_minus() - b.det_i_minus());
    out.rhs = diff * std::exp(-ta + 0.5 * (diff + 2.0 * hb + 1.0) * (diff + 2.0 * hb + 1.0)) +
              std::exp(0.5 * (hb + 1.0) * (hb + 1.0) - tb) * std::abs(std::expm1(-(ta - tb)));
    return out;
}

bool det_perturbation_bound_check(const FiniteRankOperator& a, const FiniteRankOperator& b) {
    return det_perturbation_bound(a, b).holds();
}

}  // namespace rmtlab

#include "rmtlab/edge_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rmtlab/quadrature.hpp"
#include "rmtlab/spectral.hpp"

namespace rmtlab {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kRayLow = std::polar(1.0, kPi / 6.0);
const cplx kRayHigh = std::polar(1.0, 5.0 * kPi / 6.0);

cplx log1p_c(cplx w) {
    double re = 0.5 * std::log1p(2.0 * w.real() + std::norm(w));
    double im = std::atan2(w.imag(), 1.0 + w.real());
    return {re, im};
}

double edge_sum(const std::vector<double>& nu, double S, double b) {
    double s = 0.0;
    for (double v : nu) s += S / ((b * S - v) * (b * S - v));
    return s;
}

// S (f(z) - f(b)) with f = z^2/2 - a z + (1/S) sum log(Sz - nu)
cplx scaled_f_diff(const EdgeGeometry& g, cplx z) {
    const double S = g.S;
    cplx dz = z - g.b;
    cplx s = S * (dz * (z + g.b) / 2.0 - g.a * dz);
    for (double v : g.nu) s += log1p_c(S * dz / (g.b * S - v));
    return s;
}

}  // namespace

EdgeConstants edge_constants(double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    EdgeConstants c;
    c.kappa = kappa;
    const double r = std::sqrt(1.0 + 4.0 * kappa);
    const double kb0 = (1.0 + 2.0 * kappa) / r;
    c.b0 = kb0 / kappa;
    c.kappa_b0 = kb0;
    c.gamma_per_n = r;
    c.delta = 0.5 * r;
    c.epsilon = (kb0 - 1.0) / 3.0;
    c.alpha0 = c.epsilon / kappa;
    c.beta0 = c.b0 + (1.0 + 2.0 * c.epsilon) / kappa;
    double i2 = semicircle_average([&](double x) { return kappa / ((kb0 - x) * (kb0 - x)); });
    double i3 = semicircle_average([&](double x) { return std::pow(kappa / (kb0 - x), 3); });
    c.b0_residual = std::abs(i2 - 1.0);
    c.delta_residual = std::abs(i3 - c.delta * c.delta * c.delta);
    return c;
}

EdgeGeometry solve_edge_geometry(const std::vector<double>& nu, double S, double alpha0, double beta0) {
    if (!(S > 0.0)) throw std::invalid_argument("S must be positive");
    if (nu.empty()) throw std::invalid_argument("empty configuration");
    const double n = static_cast<double>(nu.size());
    const double top = *std::max_element(nu.begin(), nu.end()) / S;
    double gap_hi = 2.0 * std::sqrt(n / S);
    double gap_lo = gap_hi;
    while (edge_sum(nu, S, top + gap_lo) <= 1.0) gap_lo *= 0.5;
    while (gap_hi - gap_lo > 1e-6 * gap_hi) {
        double mid = 0.5 * (gap_lo + gap_hi);
        (edge_sum(nu, S, top + mid) > 1.0 ? gap_lo : gap_hi) = mid;
    }
    double b = top + 0.5 * (gap_lo + gap_hi);
    for (int it = 0; it < 50; ++it) {
        double F = -1.0, dF = 0.0;
        for (double v : nu) {
            double q = b * S - v;
            F += S / (q * q);
            dF -= 2.0 * S * S / (q * q * q);
        }
        double step = F / dF;
        if (b - step <= top) step = 0.5 * (b - top);
        b -= step;
        if (std::abs(step) <= 1e-15 * std::abs(b)) break;
    }
    EdgeGeometry g;
    g.S = S;
    g.nu = nu;
    g.b = b;
    g.alpha0 = alpha0;
    g.beta0 = beta0;
    double sa = 0.0, sd = 0.0;
    g.in_F = true;
    for (double v : nu) {
        double q = b * S - v;
        sa += 1.0 / q;
        sd += S * S / (q * q * q);
        double gap = b - v / S;
        if (gap < alpha0 || gap > beta0) g.in_F = false;
    }
    g.a = b + sa;
    g.d = std::cbrt(sd);
    return g;
}

double mollifier_psi(double beta, double epsilon, double kappa, double x, int deriv) {
    const double x1 = 1.0 + epsilon, x2 = 1.0 + 3.0 * epsilon;
    if (kappa * beta < x2 * (1.0 - 1e-12)) throw std::invalid_argument("pole inside the mollifier support");
    auto exact = [&](double y, int k) {
        double q = kappa * beta - y;
        if (k == 0) return kappa / q;
        if (k == 1) return kappa / (q * q);
        return 2.0 * kappa / (q * q * q);
    };
    double ax = std::abs(x);
    if (ax <= x1) return exact(x, deriv);
    if (ax >= x2) return 0.0;
    // quintic Hermite blend in s in [0,1] matching value, slope and curvature at |x| = 1+eps
    const double width = x2 - x1;
    const double dir = x > 0.0 ? 1.0 : -1.0;   // dx/ds = dir * width
    const double xb = dir * x1;
    const double p0 = exact(xb, 0);
    const double p1 = exact(xb, 1) * dir * width;
    const double p2 = exact(xb, 2) * width * width;
    const double s = (ax - x1) / width;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    double h0, h1, h2;
    if (deriv == 0) {
        h0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
        h1 = s - 6 * s3 + 8 * s4 - 3 * s5;
        h2 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5);
        return p0 * h0 + p1 * h1 + p2 * h2;
    }
    if (deriv == 1) {
        h0 = -30 * s2 + 60 * s3 - 30 * s4;
        h1 = 1 - 18 * s2 + 32 * s3 - 15 * s4;
        h2 = 0.5 * (2 * s - 9 * s2 + 12 * s3 - 5 * s4);
        return (p0 * h0 + p1 * h1 + p2 * h2) / (dir * width);
    }
    h0 = -60 * s + 180 * s2 - 120 * s3;
    h1 = -36 * s + 96 * s2 - 60 * s3;
    h2 = 0.5 * (2 - 18 * s + 36 * s2 - 20 * s3);
    return (p0 * h0 + p1 * h1 + p2 * h2) / (width * width);
}

namespace {

struct MollifierSpec {
    double beta_factor;
    int deriv;
};
constexpr MollifierSpec kMollifiers[4] = {{2.0, 1}, {1.0, 0}, {1.0, 1}, {1.0, 2}};

}  // namespace

MollifierCentres mollifier_centres(const EdgeConstants& c) {
    MollifierCentres m;
    for (int k = 0; k < 4; ++k) {
        double beta = kMollifiers[k].beta_factor * c.b0;
        int dv = kMollifiers[k].deriv;
        m.values[k] = semicircle_average([&](double x) { return mollifier_psi(beta, c.epsilon, c.kappa, x, dv); });
    }
    return m;
}

EdgeMembership edge_membership(const std::vector<double>& nu, const EdgeConstants& c,
                               const MollifierCentres& centres) {
    const double n = static_cast<double>(nu.size());
    const double S = c.kappa * n;
    const double eps_n = 1.0 / std::log(n);
    EdgeMembership m;
    EdgeGeometry g = solve_edge_geometry(nu, S, c.alpha0, c.beta0);
    m.in_F = g.in_F;
    m.a_offset = (g.a * S - n * c.gamma_per_n) / std::cbrt(n);
    m.d_offset = g.d * std::cbrt(c.kappa) - c.delta;
    m.in_G = m.in_F && std::abs(m.a_offset) <= eps_n && std::abs(m.d_offset) <= eps_n;

    double top = 0.0;
    for (double v : nu) top = std::max(top, std::abs(v / n));
    m.in_H_prime = top <= 1.0 + c.epsilon;
    const double thr = std::pow(n, 1.0 / 6.0);
    bool stats_ok = true;
    for (int k = 0; k < 4; ++k) {
        double beta = kMollifiers[k].beta_factor * c.b0;
        int dv = kMollifiers[k].deriv;
        double s = linear_statistic(
            nu, [&](double x) { return mollifier_psi(beta, c.epsilon, c.kappa, x, dv); }, centres.values[k]);
        m.statistics.push_back(s);
        if (std::abs(s) > thr) stats_ok = false;
    }
    m.in_H = m.in_H_prime && stats_ok;
    return m;
}

EdgeKernel::EdgeKernel(const EdgeGeometry& g, double xi_max, double eta_max, int refine) : g_(g) {
    const double S = g_.S;
    scale_ = g_.d * std::cbrt(S);
    const double um = std::abs(xi_max) * scale_;
    const double vm = std::abs(eta_max) * scale_;
    const double h0 = 1.0 / (scale_ * refine);
    sigma_ = 2.0 * h0;

    auto fprime = [&](cplx z) {
        cplx s = z - g_.a;
        for (double v : g_.nu) s += 1.0 / (S * z - v);
        return s;
    };
    // truncation from the exact real parts, which are monotone along both contours
    auto z_exponent = [&](double t) {
        cplx z = g_.b + t * kRayHigh;
        return um * t * std::sqrt(3.0) / 2.0 - scaled_f_diff(g_, z).real();
    };
    double tz = h0;
    while (z_exponent(tz) > -42.0) tz *= 1.15;
    double tw = h0;
    while (scaled_f_diff(g_, cplx(g_.b, tw)).real() > -42.0) tw *= 1.15;
    tw = std::max(tw, 7.6 * sigma_);

    auto rate_z = [&](double t) {
        return refine * (S * std::abs(fprime(g_.b + t * kRayHigh)) + um + vm + 1.0);
    };
    auto rate_w = [&](double s) { return refine * (S * std::abs(fprime(cplx(g_.b, s))) + um + vm + 1.0); };
    Rule rz = composite(graded_edges(tz, h0, rate_z));
    // lower ray b + t e^{i pi/6}, t from -tz to 0, then upper ray b + t e^{5 i pi/6}
    for (std::size_t k = 0; k < rz.size(); ++k) {
        z_.z.push_back(g_.b - rz.x[k] * kRayLow);
        z_.dz.push_back(kRayLow * rz.w[k]);
    }
    for (std::size_t k = 0; k < rz.size(); ++k) {
        z_.z.push_back(g_.b + rz.x[k] * kRayHigh);
        z_.dz.push_back(kRayHigh * rz.w[k]);
    }
    ez_.resize(z_.z.size());
    for (std::size_t i = 0; i < z_.z.size(); ++i) ez_[i] = std::exp(-scaled_f_diff(g_, z_.z[i])) * z_.dz[i];

    std::vector<double> we = graded_edges(tw, h0, rate_w);
    std::vector<double> all;
    for (std::size_t k = we.size(); k-- > 1;) all.push_back(-we[k]);
    for (double e : we) all.push_back(e);
    Rule rs = composite(all);
    for (std::size_t k = 0; k < rs.size(); ++k) {
        cplx w(g_.b, rs.x[k]);
        w_.push_back(w);
        dw_.push_back(cplx(0.0, rs.w[k]));
        sfw_.push_back(scaled_f_diff(g_, w));
    }
}

cplx EdgeKernel::sf(cplx z) const { return scaled_f_diff(g_, z); }

std::vector<cplx> EdgeKernel::row(double eta, const std::vector<double>& xis) const {
    const double v = eta * scale_;
    std::vector<cplx> hw(w_.size());
    for (std::size_t k = 0; k < w_.size(); ++k) hw[k] = std::exp(-v * (w_[k] - g_.b) + sfw_[k]);
    std::vector<cplx> G(z_.z.size());
    for (std::size_t i = 0; i < z_.z.size(); ++i) {
        cplx z = z_.z[i];
        cplx hz = 0.0;
        if (std::abs(z.real() - g_.b) < sigma_) hz = std::exp(-v * (z - g_.b) + sf(z));
        G[i] = vertical_cauchy(w_, dw_, hw, g_.b, z, hz, sigma_);
    }
    const cplx norm = scale_ / (cplx(0.0, 2.0 * kPi) * cplx(0.0, 2.0 * kPi));
    std::vector<cplx> out(xis.size());
    for (std::size_t j = 0; j < xis.size(); ++j) {
        const double u = xis[j] * scale_;
        cplx s = 0.0;
        for (std::size_t i = 0; i < z_.z.size(); ++i) s += std::exp(u * (z_.z[i] - g_.b)) * ez_[i] * G[i];
        out[j] = s * norm;
    }
    return out;
}

cplx EdgeKernel::value(double xi, double eta) const { return row(eta, {xi})[0]; }

EdgeValue edge_kernel_scaled_detail(const EdgeGeometry& g, double xi, double eta, double tol) {
    EdgeValue out;
    cplx prev = EdgeKernel(g, xi, eta, 1).value(xi, eta);
    for (int r = 2; r <= 32; r *= 2) {
        cplx cur = EdgeKernel(g, xi, eta, r).value(xi, eta);
        double change = std::abs(cur - prev);
        out = {cur.real(), cur.imag(), change, r};
        if (change <= tol * std::max(std::abs(cur), 1e-3)) return out;
        prev = cur;
    }
    throw std::runtime_error("edge kernel quadrature did not converge");
}

double edge_kernel_scaled(const EdgeGeometry& g, double xi, double eta) {
    return edge_kernel_scaled_detail(g, xi, eta).value;
}

bool ExpansionResiduals::holds(double tol3) const {
    return f1 <= 1e-10 && f2 <= 1e-10 && f3_relative <= tol3 && lambda >= lambda_lo && lambda <= lambda_hi &&
           worst_remainder_ratio <= 1.0 && d_in_window;
}

ExpansionResiduals expansion_check(const EdgeGeometry& g) {
    const double S = g.S, b = g.b;
    ExpansionResiduals r;
    double f1 = b - g.a, f2 = 1.0, f4 = 0.0, min_gap = std::numeric_limits<double>::infinity();
    for (double v : g.nu) {
        double q = b * S - v;
        f1 += 1.0 / q;
        f2 -= S / (q * q);
        f4 += S * S * S / (q * q * q * q);
        min_gap = std::min(min_gap, b - v / S);
    }
    r.f1 = std::abs(f1);
    r.f2 = std::abs(f2);
    const double d3 = g.d * g.d * g.d, d4 = d3 * g.d;

    // third derivative from the Cauchy integral on a circle inside the pole-free disc
    const double rad = 0.5 * min_gap;
    const int N = 128;
    cplx acc = 0.0;
    for (int k = 0; k < N; ++k) {
        double th = 2.0 * kPi * k / N;
        cplx e = std::polar(1.0, th);
        acc += scaled_f_diff(g, b + rad * e) / S * std::pow(e, -3);
    }
    double f3 = 6.0 * acc.real() / (N * rad * rad * rad);
    r.f3_relative = std::abs(f3 - 2.0 * d3) / (2.0 * d3);

    r.lambda = 0.25 * f4 / d4;
    r.lambda_lo = std::pow(std::pow(g.alpha0, 2.0 / 3.0) / g.beta0, 2) / 4.0;
    r.lambda_hi = std::pow(std::pow(g.beta0, 2.0 / 3.0) / g.alpha0, 2) / 4.0;
    r.d_in_window = g.d >= std::pow(g.beta0, -1.0 / 3.0) && g.d <= std::pow(g.alpha0, -1.0 / 3.0);

    const double bound_c = 20.0 * std::pow(g.alpha0, -5.0);
    for (int i = 1; i <= 10; ++i) {
        double rho = 0.5 * g.alpha0 * i / 10.0;
        for (int k = 0; k < 16; ++k) {
            cplx dz = std::polar(rho, 2.0 * kPi * k / 16.0);
            cplx R = scaled_f_diff(g, b + dz) / S - d3 * dz * dz * dz / 3.0 + r.lambda * d4 * dz * dz * dz * dz;
            r.worst_remainder_ratio = std::max(r.worst_remainder_ratio, std::abs(R) / (bound_c * std::pow(rho, 5)));
        }
    }
    return r;
}

BoundCheck edge_bound_check(const EdgeGeometry& g, double half_width, int points) {
    const double S = g.S, beta0 = g.beta0, b2 = beta0 * beta0;
    BoundCheck out;
    out.worst_slack = std::numeric_limits<double>::infinity();
    auto record = [&](double slack, double where) {
        ++out.points;
        if (slack < out.worst_slack) {
            out.worst_slack = slack;
            out.where = where;
        }
        if (slack < -1e-12) out.holds = false;
    };
    for (int k = 0; k < points; ++k) {
        double s = -half_width + 2.0 * half_width * k / (points - 1);
        double as = std::abs(s);
        double lhs_w = scaled_f_diff(g, cplx(g.b, s)).real() / S;
        double rhs_w = as <= beta0 ? -s * s * s * s / (8.0 * b2) : (b2 - 2.0 * s * s) / 8.0;
        record(rhs_w - lhs_w, s);
        cplx z = s <= 0.0 ? g.b + s * kRayLow : g.b + s * kRayHigh;
        double lhs_z = -scaled_f_diff(g, z).real() / S;
        double rhs_z = as <= beta0 ? -s * s * s * s / (24.0 * b2) : (b2 - 2.0 * s * s) / 24.0;
        record(rhs_z - lhs_z, s);
    }
    return out;
}

}  // namespace rmtlab

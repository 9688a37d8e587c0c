#include "rmtlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rmtlab/eigensolver.hpp"
#include "rmtlab/quadrature.hpp"

namespace rmtlab {

Spectrum eigenvalues(const HermitianMatrix& h, SpectrumScale scale) {
    Spectrum s;
    s.scale = scale;
    s.values = hermitian_eigenvalues(h);
    double n = static_cast<double>(h.rows());
    double factor = 1.0;
    if (scale == SpectrumScale::x_over_sqrt_n) factor = 1.0 / std::sqrt(n);
    else if (scale == SpectrumScale::sqrt_n_x || scale == SpectrumScale::sqrt_n_w) factor = std::sqrt(n);
    if (factor != 1.0)
        for (double& v : s.values) v *= factor;
    return s;
}

cplx stieltjes_mn(const std::vector<double>& y, cplx z) {
    if (z.imag() == 0.0) throw std::invalid_argument("Stieltjes transform needs Im z != 0");
    if (y.empty()) throw std::invalid_argument("empty spectrum");
    cplx s = 0.0;
    for (double v : y) s += 1.0 / (v - z);
    return s / static_cast<double>(y.size());
}

cplx stieltjes_mn(const Spectrum& s, cplx z) {
    if (s.scale != SpectrumScale::x_over_sqrt_n && s.scale != SpectrumScale::unscaled)
        throw std::invalid_argument("stieltjes_mn expects eigenvalues of X/sqrt(n)");
    return stieltjes_mn(s.values, z);
}

double semicircle_density(double x, double kappa) {
    double r2 = 1.0 + 4.0 * kappa;
    double inside = r2 - x * x;
    if (inside <= 0.0) return 0.0;
    return 2.0 * std::sqrt(inside) / (std::numbers::pi * r2);
}

double wigner_u(double x) {
    double inside = 1.0 - x * x;
    return inside > 0.0 ? 2.0 / std::numbers::pi * std::sqrt(inside) : 0.0;
}

cplx semicircle_transform(cplx z) {
    if (!(z.imag() > 0.0)) throw std::invalid_argument("semicircle transform needs Im z > 0");
    return 2.0 * (-z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0));
}

double semicircle_average(const std::function<double(double)>& phi) {
    // x = cos(theta) turns the square-root endpoints into a smooth periodic integrand
    auto g = [&](double th) {
        double s = std::sin(th);
        return phi(std::cos(th)) * 2.0 / std::numbers::pi * s * s;
    };
    return integrate(g, 0.0, std::numbers::pi, 1e-14, 4, 1 << 12);
}

double linear_statistic(const std::vector<double>& nu, const std::function<double(double)>& phi,
                        double center) {
    double n = static_cast<double>(nu.size());
    double s = 0.0;
    for (double v : nu) s += phi(v / n);
    return s - n * center;
}

double linear_statistic(const std::vector<double>& nu, const std::function<double(double)>& phi) {
    return linear_statistic(nu, phi, semicircle_average(phi));
}

bool ResolventResiduals::identities_hold(double tol) const {
    return trace_expansion <= tol && minor_difference <= tol && im_beta_identity <= tol &&
           im_beta_star_identity <= tol;
}

bool ResolventResiduals::inequalities_hold(double tol) const {
    return slack_im_beta >= -tol && slack_im_beta_star >= -tol && slack_quadratic_form >= -tol &&
           slack_trace_difference >= -tol;
}

namespace {

Eigen::MatrixXcd minor_of(const HermitianMatrix& x, int k) {
    const int n = static_cast<int>(x.rows());
    Eigen::MatrixXcd m(n - 1, n - 1);
    for (int i = 0, ii = 0; i < n; ++i) {
        if (i == k) continue;
        for (int j = 0, jj = 0; j < n; ++j) {
            if (j == k) continue;
            m(ii, jj++) = x(i, j);
        }
        ++ii;
    }
    return m;
}

Eigen::VectorXcd column_without(const HermitianMatrix& x, int k) {
    const int n = static_cast<int>(x.rows());
    Eigen::VectorXcd a(n - 1);
    for (int i = 0, ii = 0; i < n; ++i)
        if (i != k) a(ii++) = x(i, k);
    return a;
}

}  // namespace

ResolventResiduals resolvent_identities_check(const HermitianMatrix& x, cplx z) {
    const int n = static_cast<int>(x.rows());
    if (n < 2) throw std::invalid_argument("resolvent check needs n >= 2");
    if (z.imag() == 0.0) throw std::invalid_argument("resolvent check needs Im z != 0");
    const double rn = std::sqrt(static_cast<double>(n));
    const double v = std::abs(z.imag());
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd d = (x / rn - z * id).inverse();
    cplx tr_d = d.trace();

    ResolventResiduals r;
    r.slack_im_beta = r.slack_im_beta_star = r.slack_quadratic_form = r.slack_trace_difference =
        std::numeric_limits<double>::infinity();
    cplx expansion = 0.0;
    for (int k = 0; k < n; ++k) {
        Eigen::MatrixXcd xk = minor_of(x, k);
        Eigen::VectorXcd a = column_without(x, k);
        Eigen::MatrixXcd dk = (xk / rn - z * Eigen::MatrixXcd::Identity(n - 1, n - 1)).inverse();
        cplx tr_dk = dk.trace();
        cplx quad = a.dot(dk * a) / static_cast<double>(n);
        cplx quad2 = a.dot(dk * (dk * a)) / static_cast<double>(n);
        double quad_dd = a.dot(dk * (dk.adjoint() * a)).real() / n;
        double tr_dd = (dk * dk.adjoint()).trace().real();
        cplx denom = x(k, k).real() / rn - z - quad;
        expansion += 1.0 / denom;

        cplx lhs2 = tr_d - tr_dk;
        r.minor_difference = std::max(r.minor_difference, std::abs(lhs2 - (1.0 + quad2) / denom));

        cplx beta_k = -denom;
        cplx beta_star = z + kSigma2 / n * tr_dk;
        double sgn = z.imag() > 0.0 ? 1.0 : -1.0;
        r.im_beta_identity =
            std::max(r.im_beta_identity, std::abs(sgn * beta_k.imag() - v * (1.0 + quad_dd)));
        r.im_beta_star_identity = std::max(
            r.im_beta_star_identity, std::abs(sgn * beta_star.imag() - v * (1.0 + kSigma2 / n * tr_dd)));

        r.slack_im_beta = std::min(r.slack_im_beta, sgn * beta_k.imag() - v);
        r.slack_im_beta_star = std::min(r.slack_im_beta_star, sgn * beta_star.imag() - v);
        r.slack_quadratic_form = std::min(r.slack_quadratic_form, 1.0 + quad_dd - std::abs(1.0 + quad2));
        r.slack_trace_difference = std::min(r.slack_trace_difference, 1.0 / v - std::abs(lhs2));
    }
    r.trace_expansion = std::abs(tr_d - expansion);
    return r;
}

}  // namespace rmtlab

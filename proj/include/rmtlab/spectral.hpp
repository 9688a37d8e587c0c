#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "rmtlab/ensembles.hpp"

namespace rmtlab {

using cplx = std::complex<double>;

enum class SpectrumScale { unscaled, x_over_sqrt_n, sqrt_n_x, sqrt_n_w };

struct Spectrum {
    std::vector<double> values;   // ascending
    SpectrumScale scale = SpectrumScale::unscaled;
};

// Eigenvalues of H multiplied by the factor implied by scale (1/sqrt(n) or sqrt(n)).
Spectrum eigenvalues(const HermitianMatrix& h, SpectrumScale scale);

// (1/n) sum 1/(y_j - z) with y the eigenvalues of X/sqrt(n).
cplx stieltjes_mn(const std::vector<double>& y, cplx z);
cplx stieltjes_mn(const Spectrum& s, cplx z);

double semicircle_density(double x, double kappa);
double wigner_u(double x);
// Stieltjes transform of u: 2(-z + sqrt(z-1) sqrt(z+1)), Im z > 0.
cplx semicircle_transform(cplx z);
// Integral of phi * u over [-1, 1], spectrally accurate for smooth phi.
double semicircle_average(const std::function<double(double)>& phi);

// sum phi(nu_j / n) - n * integral(phi u), nu the eigenvalues of sqrt(n) X.
double linear_statistic(const std::vector<double>& nu, const std::function<double(double)>& phi);
double linear_statistic(const std::vector<double>& nu, const std::function<double(double)>& phi,
                        double center);

struct ResolventResiduals {
    double trace_expansion = 0.0;     // |tr D - sum_k 1/(x_kk/sqrt n - z - a_k^* D_k a_k / n)|
    double minor_difference = 0.0;    // max_k |tr D - tr D_k - (1 + a_k^* D_k^2 a_k / n) / (...)|
    double im_beta_identity = 0.0;    // max_k |Im beta_k - v (1 + a_k^* D_k D_k^* a_k / n)|
    double im_beta_star_identity = 0.0;
    // minimum over k of (rhs - lhs) for each inequality; nonnegative when it holds
    double slack_im_beta = 0.0;
    double slack_im_beta_star = 0.0;
    double slack_quadratic_form = 0.0;
    double slack_trace_difference = 0.0;

    bool identities_hold(double tol) const;
    bool inequalities_hold(double tol) const;
};

// Exact minor/resolvent identities and estimates for D = (X/sqrt(n) - z)^{-1}.
ResolventResiduals resolvent_identities_check(const HermitianMatrix& x, cplx z);

}  // namespace rmtlab

#pragma once

#include <vector>

#include "rmtlab/bulk_kernel.hpp"
#include "rmtlab/contour.hpp"

namespace rmtlab {

struct EdgeConstants {
    double kappa = 1.0;
    double b0 = 0.0;
    double kappa_b0 = 0.0;      // (1 + 2 kappa) / sqrt(1 + 4 kappa)
    double gamma_per_n = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;
    double alpha0 = 0.0;        // epsilon / kappa
    double beta0 = 0.0;         // b0 + (1 + 2 epsilon) / kappa
    double b0_residual = 0.0;   // |int kappa u/(b0 kappa - x)^2 - 1|
    double delta_residual = 0.0;
};

EdgeConstants edge_constants(double kappa);

struct EdgeGeometry {
    double S = 1.0;
    std::vector<double> nu;
    double b = 0.0, a = 0.0, d = 0.0;
    double alpha0 = 0.0, beta0 = 0.0;
    bool in_F = false;
};

EdgeGeometry solve_edge_geometry(const std::vector<double>& nu, double S, double alpha0, double beta0);

// kappa/(kappa beta - x) on |x| <= 1+eps, zero beyond 1+3eps, quintic blend between.
// deriv selects the 0th, 1st or 2nd derivative.
double mollifier_psi(double beta, double epsilon, double kappa, double x, int deriv = 0);

struct EdgeMembership {
    bool in_F = false, in_G = false, in_H_prime = false, in_H = false;
    double a_offset = 0.0;            // (aS - gamma_n) / n^{1/3}
    double d_offset = 0.0;
    std::vector<double> statistics;   // psi'_{2b0}, psi_{b0}, psi'_{b0}, psi''_{b0}
};

// Centred statistics sum phi(nu_j/n) - n int phi u for the four mollifier
// functions, with the centres computed once per constant set.
struct MollifierCentres {
    double values[4] = {0, 0, 0, 0};
};
MollifierCentres mollifier_centres(const EdgeConstants& c);

// nu are eigenvalues of sqrt(n) X; S_n = kappa n and eps_n = 1/log n.
EdgeMembership edge_membership(const std::vector<double>& nu, const EdgeConstants& c,
                               const MollifierCentres& centres);

// Scaled edge kernel d S^{1/3} e^{(eta - xi) b d S^{1/3}} K(aS + xi dS^{1/3}, aS + eta dS^{1/3})
// on the rays b + t e^{i pi/6}, b + t e^{5i pi/6} and the line b + is.
class EdgeKernel {
public:
    EdgeKernel(const EdgeGeometry& g, double xi_max, double eta_max, int refine = 1);

    cplx value(double xi, double eta) const;
    std::vector<cplx> row(double eta, const std::vector<double>& xis) const;

    double scale() const { return scale_; }

private:
    cplx sf(cplx z) const;   // S (f(z) - f(b))

    EdgeGeometry g_;
    double scale_ = 0.0;     // d S^{1/3}
    double sigma_ = 0.0;
    ContourNodes z_;
    std::vector<cplx> ez_;   // exp(-S(f(z)-f(b))) dz
    std::vector<cplx> w_, dw_, sfw_;
};

struct EdgeValue {
    double value = 0.0;
    double imag = 0.0;
    double change = 0.0;
    int refine = 1;
};

EdgeValue edge_kernel_scaled_detail(const EdgeGeometry& g, double xi, double eta, double tol = 1e-8);
double edge_kernel_scaled(const EdgeGeometry& g, double xi, double eta);

struct ExpansionResiduals {
    double f1 = 0.0;              // |f'(b)|
    double f2 = 0.0;              // |f''(b)|
    double f3_relative = 0.0;     // |f'''(b) - 2 d^3| / (2 d^3)
    double lambda = 0.0;
    double lambda_lo = 0.0, lambda_hi = 0.0;
    double worst_remainder_ratio = 0.0;   // max |R| / (20 alpha0^-5 |z-b|^5)
    bool d_in_window = false;

    bool holds(double tol3 = 1e-6) const;
};

// Taylor structure of f at the double critical point b.
ExpansionResiduals expansion_check(const EdgeGeometry& g);

// Quartic decay of Re f along b + is and along the contour rays.
BoundCheck edge_bound_check(const EdgeGeometry& g, double half_width, int points = 100);

}  // namespace rmtlab

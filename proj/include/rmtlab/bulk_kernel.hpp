#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "rmtlab/contour.hpp"
#include "rmtlab/rng.hpp"

namespace rmtlab {

struct BulkGeometry {
    double S = 1.0;
    std::vector<double> nu;
    double b = 0.0;
    double D = 0.0;
    double A = 0.0;
};

// Whether sum S/(nu_j^2 + b^2 S^2) = 1 has a solution b > 0.
bool in_B_nS(const std::vector<double>& nu, double S);

// Throws std::domain_error outside B_{n,S}.
BulkGeometry solve_bulk_geometry(const std::vector<double>& nu, double S);

// Limit (delta, beta) of the bulk fixed point at macroscopic position d.
std::pair<double, double> limiting_bulk_params(double d, double kappa);

double sine_kernel(double b, double u, double v);

// Correlation kernel of n non-intersecting Brownian motions from nu at time S,
// integrated on a rectangle |Re z| <= L, |Im z| <= 1 and the line Re w = M.
// L <= 0 selects max|nu_j|/S + min(1, 1/sqrt S); M <= 0 selects L + min(1/2, 2/(S L)).
// With both defaulted the configuration is first centred by translation covariance.
cplx kernel_reference(const std::vector<double>& nu, double S, double u, double v, double L = 0.0,
                      double M = 0.0);

// Kernel on the steepest-descent contours through +-ib, in the centred frame:
// returns K(u - S D, v - S D) - sin(b(u-v))/(pi(u-v)).
class BulkDescentKernel {
public:
    // u_max, v_max bound |u|, |v| of the evaluation points (they set the truncation).
    BulkDescentKernel(const BulkGeometry& g, double u_max, double v_max, int refine = 1);

    cplx remainder(double u, double v) const;
    // remainder for every u at one v, one Cauchy pass.
    std::vector<cplx> remainder_row(double v, const std::vector<double>& us) const;

    const BulkGeometry& geometry() const { return g_; }
    std::size_t z_nodes() const { return z_.z.size(); }
    std::size_t w_nodes() const { return w_.size(); }

private:
    cplx f(cplx z) const;
    std::vector<cplx> cauchy_values(double v) const;

    BulkGeometry g_;
    double c0_ = 0.0;
    double sigma_ = 0.0;
    ContourNodes z_;
    std::vector<cplx> ez_;   // exp(-S f(z) + c0) dz
    std::vector<cplx> w_, dw_, sfw_;
};

struct DescentValue {
    double value = 0.0;       // K(u - SD, v - SD)
    double imag = 0.0;        // residual imaginary part
    double change = 0.0;      // |difference| to the previous refinement
    int refine = 1;
};

// Panel doubling until the change is below tol times max(|K|, b/pi).
DescentValue kernel_descent_detail(const BulkGeometry& g, double u, double v, double tol = 1e-8);
double kernel_descent(const BulkGeometry& g, double u, double v);

struct BoundCheck {
    bool holds = true;
    double worst_slack = 0.0;   // min over the grid of (rhs - lhs)
    int points = 0;
    double where = 0.0;         // parameter of the worst point
};

// Quadratic decay of Re f away from +-ib along the imaginary axis and along the
// hyperbolas t +- i sqrt(t^2/3 + b^2), on a grid of points in [-half_width, half_width].
BoundCheck descent_bound_check(const BulkGeometry& g, double half_width = 10.0, int points = 100);

// Centring sequences for the bulk at macroscopic position d.
struct BulkSequences {
    int n = 0;
    double kappa = 1.0;
    double d = 0.0;
    long dn = 0;               // floor(d n)
    double S = 0.0;            // kappa n
    double delta = 0.0, beta = 0.0;        // limits
    double delta_n = 0.0, beta_n = 0.0;    // finite-n fixed point of the averaged transform
    double c_n = 0.0;
    double alpha = 0.0;
    double omega_n = 0.0;
    std::vector<double> taus;              // beta_n, beta/2, 2 beta, 3 beta
    std::vector<cplx> mean_m;              // estimated E m_n(kappa c_n + kappa tau i)
    int reference_replicas = 0;
};

// Estimates E m_n from `replicas` independent Wigner samples of the given law and
// solves the finite-n fixed point by Newton iteration from the limiting values.
BulkSequences bulk_sequences(int n, double kappa, double d, const ElementLaw& law, std::uint64_t seed,
                             int replicas = 200);

struct BulkEvents {
    bool in_B = false;
    bool in_C = false;
    bool in_V = false;
    double b = 0.0, D = 0.0, A = 0.0;
    double max_M = 0.0;        // max |M_n(tau)|
};

// nu are eigenvalues of sqrt(n) X already shifted by -c_n S_n.
BulkEvents bulk_event_sets(const std::vector<double>& nu_shifted, const BulkSequences& seq);

}  // namespace rmtlab

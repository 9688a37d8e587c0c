#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

namespace rmtlab {

using RealKernel = std::function<double(double, double)>;

// Finite interval [a, b] split at the given interior breakpoints, or the
// half-line (a, inf) mapped to (0, 1) by u = exp(-(x - a) / scale).
struct Domain {
    double a = 0.0, b = 1.0;
    bool half_line = false;
    double scale = 1.0;
    std::vector<double> breaks;

    static Domain interval(double a, double b, std::vector<double> breaks = {});
    static Domain from(double a, double scale = 1.0);
};

struct FredholmProblem {
    RealKernel kernel;
    Domain domain;
    int order = 16;                             // starting node count per piece
    std::function<double(double)> weight;       // phi; kernel becomes phi^1/2 K phi^1/2
    double tolerance = 1e-10;
    int max_order = 2048;
};

struct DetResult {
    double value = 0.0;
    int order_used = 0;
    double convergence_gap = 0.0;
};

// Nodes x and weights w of the composite Gauss-Legendre rule with `order` nodes per piece.
void domain_nodes(const Domain& d, int order, std::vector<double>& x, std::vector<double>& w);

// Throws std::runtime_error when the order cap is reached without convergence.
DetResult nystrom_det(const FredholmProblem& p);

double sine_kernel_real(double b, double x, double y);
// det(I - K_sine) on [-s/2, s/2]
DetResult sine_gap(double b, double s);

// Tracy-Widom GUE distribution, t in [-10, 8].
double tw_cdf(double t);
DetResult tw_cdf_detail(double t);
// Mean of the distribution by differencing the CDF on [-10, 8].
double tw_mean(double step = 0.02);

// Height one, support [-1, 1], C^2, quintic on [-1, 0] and [0, 1].
double bump(double x);

// det(I - phi^1/2 K phi^1/2), phi = 1 - exp(-psi). Throws if psi < 0 at a node.
DetResult laplace_functional(const RealKernel& k, const std::function<double(double)>& psi, const Domain& d,
                             double tolerance = 1e-10);

double hs_norm(const RealKernel& k, const Domain& d, double tol = 1e-12);
double trace(const RealKernel& k, const Domain& d, double tol = 1e-12);

// Orthonormal Legendre polynomial of degree k on [-1, 1].
double legendre_orthonormal(int k, double x);

// A(x, y) = sum C_ij p_i(x) p_j(y) on [-1, 1].
struct FiniteRankOperator {
    Eigen::MatrixXd coeffs;

    double operator()(double x, double y) const;
    RealKernel kernel() const;
    double trace() const { return coeffs.trace(); }
    double hs_norm() const { return coeffs.norm(); }
    double det_i_minus() const;
};

FiniteRankOperator random_finite_rank(int rank, int basis, double scale, std::uint64_t seed);

struct PerturbationBound {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds() const { return lhs <= rhs * (1.0 + 1e-12) + 1e-14; }
};

PerturbationBound det_perturbation_bound(const FiniteRankOperator& a, const FiniteRankOperator& b);
bool det_perturbation_bound_check(const FiniteRankOperator& a, const FiniteRankOperator& b);

}  // namespace rmtlab

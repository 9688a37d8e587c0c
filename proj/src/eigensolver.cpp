#include "rmtlab/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace rmtlab {

using cd = std::complex<double>;

void hermitian_tridiagonalize(const HermitianMatrix& h, std::vector<double>& diag,
                              std::vector<double>& offdiag) {
    const int n = static_cast<int>(h.rows());
    HermitianMatrix a = h;
    std::vector<cd> sub(std::max(n - 1, 0));

    for (int k = 0; k + 1 < n; ++k) {
        const int m = n - k - 1;
        Eigen::VectorXcd x = a.block(k + 1, k, m, 1);
        double xnorm = x.norm();
        if (m == 1 || xnorm == 0.0) {
            sub[k] = x(0);
            continue;
        }
        cd phase = std::abs(x(0)) > 0.0 ? x(0) / std::abs(x(0)) : cd(1.0, 0.0);
        cd alpha = -phase * xnorm;
        Eigen::VectorXcd v = x;
        v(0) -= alpha;
        double vnorm = v.norm();
        if (vnorm == 0.0) {
            sub[k] = x(0);
            continue;
        }
        v /= vnorm;

        auto block = a.block(k + 1, k + 1, m, m);
        Eigen::VectorXcd p = block * v;
        cd kv = v.dot(p);   // v^* p, real for Hermitian blocks
        Eigen::VectorXcd w = p - kv.real() * v;
        block.noalias() -= 2.0 * (v * w.adjoint());
        block.noalias() -= 2.0 * (w * v.adjoint());
        sub[k] = alpha;
    }

    diag.assign(n, 0.0);
    for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
    offdiag.assign(std::max(n - 1, 0), 0.0);
    // a diagonal unitary similarity rotates every subdiagonal entry onto the positive real axis
    for (int i = 0; i + 1 < n; ++i) offdiag[i] = std::abs(sub[i]);
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e, int max_iter) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return {};
    e.resize(n, 0.0);   // e[n-1] is workspace

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (++iter > max_iter)
                    throw std::runtime_error("tridiagonal QL did not converge");
                // Wilkinson shift from the leading 2x2 block
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("matrix must be square");
    std::vector<double> d, e;
    hermitian_tridiagonalize(h, d, e);
    return tridiagonal_eigenvalues(std::move(d), std::move(e));
}

}  // namespace rmtlab

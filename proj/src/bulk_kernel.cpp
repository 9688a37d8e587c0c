#include "rmtlab/bulk_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/spectral.hpp"

namespace rmtlab {

namespace {

constexpr double kPi = std::numbers::pi;

double bulk_sum(const std::vector<double>& nu, double S, double b) {
    double s = 0.0;
    for (double v : nu) s += S / (v * v + b * b * S * S);
    return s;
}

cplx sum_log(const std::vector<double>& nu, double S, cplx z) {
    cplx s = 0.0;
    for (double v : nu) s += std::log(S * z - v);
    return s;
}

}  // namespace

bool in_B_nS(const std::vector<double>& nu, double S) {
    if (!(S > 0.0)) throw std::invalid_argument("S must be positive");
    double s = 0.0;
    for (double v : nu) {
        if (v == 0.0) return true;
        s += S / (v * v);
    }
    return s > 1.0;
}

BulkGeometry solve_bulk_geometry(const std::vector<double>& nu, double S) {
    if (nu.empty()) throw std::invalid_argument("empty configuration");
    if (!in_B_nS(nu, S)) throw std::domain_error("configuration is not in B_{n,S}");
    const double n = static_cast<double>(nu.size());
    double hi = 2.0 * std::sqrt(n / S);
    double lo = hi;
    while (bulk_sum(nu, S, lo) <= 1.0) lo *= 0.5;
    while (hi - lo > 1e-6 * hi) {
        double mid = 0.5 * (lo + hi);
        (bulk_sum(nu, S, mid) > 1.0 ? lo : hi) = mid;
    }
    double b = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        double F = -1.0, dF = 0.0;
        for (double v : nu) {
            double q = v * v + b * b * S * S;
            F += S / q;
            dF -= 2.0 * b * S * S * S / (q * q);
        }
        double step = F / dF;
        b -= step;
        if (std::abs(step) <= 1e-15 * b) break;
    }
    BulkGeometry g;
    g.S = S;
    g.nu = nu;
    g.b = b;
    for (double v : nu) {
        double q = v * v + b * b * S * S;
        g.D += v / q;
        g.A += S * S * S * b * b / (q * q);
    }
    return g;
}

std::pair<double, double> limiting_bulk_params(double d, double kappa) {
    double r2 = 1.0 + 4.0 * kappa;
    if (!(std::abs(d) < std::sqrt(r2))) throw std::domain_error("d outside the bulk");
    return {-2.0 * d / r2, 2.0 / r2 * std::sqrt(r2 - d * d)};
}

double sine_kernel(double b, double u, double v) {
    double x = u - v;
    if (std::abs(x) < 1e-8) return b / kPi * (1.0 - (b * x) * (b * x) / 6.0);
    return std::sin(b * x) / (kPi * x);
}

cplx kernel_reference(const std::vector<double>& nu, double S, double u, double v, double L, double M) {
    if (!(S > 0.0)) throw std::invalid_argument("S must be positive");
    if (L <= 0.0 && M <= 0.0 && !nu.empty()) {
        // centre the configuration: K^nu(u, v) = e^{c(u-v)} K^{nu - cS}(u - cS, v - cS)
        auto [lo, hi] = std::minmax_element(nu.begin(), nu.end());
        const double c = 0.5 * (*lo + *hi) / S;
        if (c != 0.0) {
            std::vector<double> shifted(nu);
            for (double& x : shifted) x -= c * S;
            const double shift = c * S;
            const double L0 = 0.5 * (*hi - *lo) / S + std::min(1.0, 1.0 / std::sqrt(S));
            return std::exp(c * (u - v)) * kernel_reference(shifted, S, u - shift, v - shift, L0, 0.0);
        }
    }
    double numax = 0.0;
    for (double x : nu) numax = std::max(numax, std::abs(x));
    if (L <= 0.0) L = numax / S + std::min(1.0, 1.0 / std::sqrt(S));
    if (M <= 0.0) M = L + std::min(0.5, 2.0 / (S * L));
    if (numax >= L * S) throw std::invalid_argument("rectangle does not enclose every point");
    if (!(M > L)) throw std::invalid_argument("need M > L");
    const double H = 1.0;
    const double n = static_cast<double>(nu.size());

    // log-magnitude of the w integrand along Re w = M decides the truncation
    auto logw = [&](double s) {
        cplx w(M, s);
        return std::real(S * w * w / 2.0 - v * w + sum_log(nu, S, w));
    };
    double peak = logw(0.0);
    double T = 1.0;
    while (logw(T) > peak - 45.0 || logw(-T) > peak - 45.0) T *= 1.25;
    (void)n;

    auto build = [&](int panels_per_unit) {
        ContourNodes zc;
        auto segment = [&](cplx a, cplx b) {
            double len = std::abs(b - a);
            int p = std::max(2, static_cast<int>(std::ceil(len * panels_per_unit)));
            Rule r = composite(0.0, 1.0, p);
            for (std::size_t k = 0; k < r.size(); ++k) {
                zc.z.push_back(a + (b - a) * r.x[k]);
                zc.dz.push_back((b - a) * r.w[k]);
            }
        };
        // counter-clockwise rectangle
        segment({-L, -H}, {L, -H});
        segment({L, -H}, {L, H});
        segment({L, H}, {-L, H});
        segment({-L, H}, {-L, -H});
        ContourNodes wc;
        int p = std::max(4, static_cast<int>(std::ceil(2.0 * T * panels_per_unit)));
        Rule r = composite(-T, T, p);
        for (std::size_t k = 0; k < r.size(); ++k) {
            wc.z.push_back({M, r.x[k]});
            wc.dz.push_back({0.0, r.w[k]});
        }
        return std::pair{zc, wc};
    };

    auto eval = [&](int ppu) {
        auto [zc, wc] = build(ppu);
        std::vector<cplx> ez(zc.z.size()), ew(wc.z.size());
        double mz = -std::numeric_limits<double>::infinity(), mw = mz;
        for (std::size_t i = 0; i < zc.z.size(); ++i) {
            cplx z = zc.z[i];
            ez[i] = -S * z * z / 2.0 + u * z - sum_log(nu, S, z);
            mz = std::max(mz, ez[i].real());
        }
        for (std::size_t k = 0; k < wc.z.size(); ++k) {
            cplx w = wc.z[k];
            ew[k] = S * w * w / 2.0 - v * w + sum_log(nu, S, w);
            mw = std::max(mw, ew[k].real());
        }
        for (std::size_t i = 0; i < ez.size(); ++i) ez[i] = std::exp(ez[i] - mz) * zc.dz[i];
        for (std::size_t k = 0; k < ew.size(); ++k) ew[k] = std::exp(ew[k] - mw) * wc.dz[k];
        cplx total = 0.0;
        for (std::size_t i = 0; i < ez.size(); ++i) {
            cplx inner = 0.0;
            for (std::size_t k = 0; k < ew.size(); ++k) inner += ew[k] / (wc.z[k] - zc.z[i]);
            total += ez[i] * inner;
        }
        return total * std::exp(mz + mw) / (cplx(0.0, 2.0 * kPi) * cplx(0.0, 2.0 * kPi));
    };

    int ppu = std::max(4, static_cast<int>(std::ceil(std::sqrt(S) + S * M / 4.0 + std::abs(u) + std::abs(v))));
    ppu = std::max(ppu, static_cast<int>(std::ceil(2.0 / (M - L))));
    cplx prev = eval(ppu);
    for (int it = 0; it < 6; ++it) {
        ppu *= 2;
        cplx cur = eval(ppu);
        if (std::abs(cur - prev) <= 1e-8 * std::max(std::abs(cur), 1e-300)) return cur;
        prev = cur;
    }
    throw std::runtime_error("reference kernel quadrature did not converge");
}

BulkDescentKernel::BulkDescentKernel(const BulkGeometry& g, double u_max, double v_max, int refine)
    : g_(g) {
    const double S = g_.S, b = g_.b, A = g_.A;
    c0_ = S * f(cplx(0.0, b)).real();
    const double sa = S * A;
    const double h = std::min({1.0 / std::sqrt(sa), 1.0 / (std::abs(u_max) + std::abs(v_max) + 1.0), 0.5}) /
                     refine;
    sigma_ = 2.0 * h;
    const double rate = sa / 6.0;
    const double um = std::abs(u_max);
    const double tz = (um + std::sqrt(um * um + 4.0 * rate * 42.0)) / (2.0 * rate);
    const double tw = std::max(std::sqrt(42.0 / rate), 7.0 * sigma_);

    // hyperbolas through +ib (leftward) and -ib (rightward), split at the crossing t = 0
    std::vector<double> edges;
    int pz = std::max(1, static_cast<int>(std::ceil(tz / h)));
    for (int p = -pz; p <= pz; ++p) edges.push_back(tz * p / pz);
    Rule rt = composite(edges);
    for (int sgn : {+1, -1}) {
        for (std::size_t k = 0; k < rt.size(); ++k) {
            double t = rt.x[k];
            double y = std::sqrt(t * t / 3.0 + b * b);
            double yp = t / (3.0 * y);
            if (sgn > 0) {
                z_.z.push_back({t, y});
                z_.dz.push_back(-cplx(1.0, yp) * rt.w[k]);
            } else {
                z_.z.push_back({t, -y});
                z_.dz.push_back(cplx(1.0, -yp) * rt.w[k]);
            }
        }
    }
    ez_.resize(z_.z.size());
    for (std::size_t i = 0; i < z_.z.size(); ++i) ez_[i] = std::exp(-S * f(z_.z[i]) + c0_) * z_.dz[i];

    // imaginary axis upward, with panel edges at -b, 0, b
    double top = b + tw;
    std::vector<double> we;
    auto add_range = [&](double a0, double a1) {
        int p = std::max(1, static_cast<int>(std::ceil((a1 - a0) / h)));
        for (int k = (we.empty() ? 0 : 1); k <= p; ++k) we.push_back(a0 + (a1 - a0) * k / p);
    };
    add_range(-top, -b);
    add_range(-b, 0.0);
    add_range(0.0, b);
    add_range(b, top);
    Rule rs = composite(we);
    for (std::size_t k = 0; k < rs.size(); ++k) {
        cplx w(0.0, rs.x[k]);
        w_.push_back(w);
        dw_.push_back(cplx(0.0, rs.w[k]));
        sfw_.push_back(S * f(w) - c0_);
    }
}

cplx BulkDescentKernel::f(cplx z) const {
    return z * z / 2.0 + g_.D * z + sum_log(g_.nu, g_.S, z) / g_.S;
}

std::vector<cplx> BulkDescentKernel::cauchy_values(double v) const {
    std::vector<cplx> hw(w_.size());
    for (std::size_t k = 0; k < w_.size(); ++k) hw[k] = std::exp(-v * w_[k] + sfw_[k]);
    std::vector<cplx> G(z_.z.size());
    for (std::size_t i = 0; i < z_.z.size(); ++i) {
        cplx z = z_.z[i];
        cplx hz = 0.0;
        if (std::abs(z.real()) < sigma_) hz = std::exp(-v * z + g_.S * f(z) - c0_);
        G[i] = vertical_cauchy(w_, dw_, hw, 0.0, z, hz, sigma_);
    }
    return G;
}

std::vector<cplx> BulkDescentKernel::remainder_row(double v, const std::vector<double>& us) const {
    std::vector<cplx> G = cauchy_values(v);
    const cplx norm = 1.0 / (cplx(0.0, 2.0 * kPi) * cplx(0.0, 2.0 * kPi));
    std::vector<cplx> out(us.size());
    for (std::size_t j = 0; j < us.size(); ++j) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < z_.z.size(); ++i) s += std::exp(us[j] * z_.z[i]) * ez_[i] * G[i];
        out[j] = s * norm;
    }
    return out;
}

cplx BulkDescentKernel::remainder(double u, double v) const {
    return remainder_row(v, {u})[0];
}

DescentValue kernel_descent_detail(const BulkGeometry& g, double u, double v, double tol) {
    if (!(g.b > 0.0) || !(g.A > 0.0)) throw std::domain_error("geometry not in B_{n,S}");
    DescentValue out;
    const double sine = sine_kernel(g.b, u, v);
    cplx prev = BulkDescentKernel(g, u, v, 1).remainder(u, v);
    for (int r = 2; r <= 32; r *= 2) {
        cplx cur = BulkDescentKernel(g, u, v, r).remainder(u, v);
        double change = std::abs(cur - prev);
        double scale = std::max(std::abs(sine + cur.real()), g.b / kPi);
        out = {sine + cur.real(), cur.imag(), change, r};
        if (change <= tol * scale) return out;
        prev = cur;
    }
    throw std::runtime_error("descent kernel quadrature did not converge");
}

double kernel_descent(const BulkGeometry& g, double u, double v) {
    return kernel_descent_detail(g, u, v).value;
}

BoundCheck descent_bound_check(const BulkGeometry& g, double half_width, int points) {
    const double S = g.S, b = g.b, A = g.A;
    auto re_f = [&](cplx z) {
        double s = 0.0;
        for (double v : g.nu) s += std::log(std::abs(S * z - v));
        return std::real(z * z / 2.0 + g.D * z) + s / S;
    };
    const double f0 = re_f(cplx(0.0, b));
    const double tol = 1e-11 * (1.0 + std::abs(f0));
    BoundCheck out;
    out.worst_slack = std::numeric_limits<double>::infinity();
    auto record = [&](double slack, double where) {
        ++out.points;
        if (slack < out.worst_slack) {
            out.worst_slack = slack;
            out.where = where;
        }
        if (slack < -tol) out.holds = false;
    };
    for (int k = 0; k < points; ++k) {
        double s = -half_width + 2.0 * half_width * k / (points - 1);
        double q = A * s * s / 6.0;
        // w_+(s) = i(s + b) for s >= -b and w_-(s) = i(s - b) for s <= b
        if (s + b >= 0.0) record(-q - (re_f(cplx(0.0, s + b)) - f0), s);
        if (-s + b >= 0.0) record(-q - (re_f(cplx(0.0, s - b)) - f0), s);
        double y = std::sqrt(s * s / 3.0 + b * b);
        record(-q - (f0 - re_f(cplx(s, y))), s);
        record(-q - (f0 - re_f(cplx(s, -y))), s);
    }
    return out;
}

BulkSequences bulk_sequences(int n, double kappa, double d, const ElementLaw& law, std::uint64_t seed,
                             int replicas) {
    if (replicas < 1) throw std::invalid_argument("need at least one reference replica");
    BulkSequences q;
    q.n = n;
    q.kappa = kappa;
    q.d = d;
    q.dn = static_cast<long>(std::floor(d * n));
    q.S = kappa * n;
    auto [delta, beta] = limiting_bulk_params(d, kappa);
    q.delta = delta;
    q.beta = beta;
    q.omega_n = std::sqrt(std::log(static_cast<double>(n)));
    q.reference_replicas = replicas;

    std::vector<std::vector<double>> spectra;
    spectra.reserve(replicas);
    for (int r = 0; r < replicas; ++r) {
        EnsembleSpec spec{n, law, 0.0, replica_seed(seed ^ 0x5EED5EED5EEDULL, r)};
        spectra.push_back(eigenvalues(sample_wigner(spec), SpectrumScale::x_over_sqrt_n).values);
    }
    auto mean_m = [&](cplx z) {
        cplx s = 0.0;
        for (const auto& y : spectra) s += stieltjes_mn(y, z);
        return s / static_cast<double>(spectra.size());
    };
    auto mean_dm = [&](cplx z) {
        cplx s = 0.0;
        for (const auto& y : spectra)
            for (double v : y) s += 1.0 / ((v - z) * (v - z));
        return s / static_cast<double>(spectra.size() * spectra.front().size());
    };
    const double x0 = static_cast<double>(q.dn) / n;
    cplx zeta(delta, beta);
    for (int it = 0; it < 100; ++it) {
        cplx g = mean_m(x0 + kappa * zeta) - zeta;
        cplx dg = kappa * mean_dm(x0 + kappa * zeta) - 1.0;
        cplx step = g / dg;
        zeta -= step;
        if (std::abs(step) < 1e-14) break;
    }
    q.delta_n = zeta.real();
    q.beta_n = zeta.imag();
    q.c_n = static_cast<double>(q.dn) / (kappa * n) + q.delta_n;
    const double c = d / kappa + delta;
    q.alpha = 0.25 * (semicircle_transform(cplx(kappa * c, 2.0 * kappa * beta)).imag() / (2.0 * beta) -
                      semicircle_transform(cplx(kappa * c, 3.0 * kappa * beta)).imag() / (3.0 * beta));
    q.taus = {q.beta_n, beta / 2.0, 2.0 * beta, 3.0 * beta};
    for (double tau : q.taus) q.mean_m.push_back(mean_m(cplx(kappa * q.c_n, kappa * tau)));
    return q;
}

BulkEvents bulk_event_sets(const std::vector<double>& nu, const BulkSequences& q) {
    BulkEvents e;
    const double n = static_cast<double>(nu.size());
    const double thr_v = std::sqrt(q.omega_n / n);
    e.in_V = true;
    for (std::size_t k = 0; k < q.taus.size(); ++k) {
        cplx m = 0.0;
        for (double v : nu) m += 1.0 / (v / n - cplx(0.0, q.kappa * q.taus[k]));
        m /= n;
        double dev = std::abs(m - q.mean_m[k]);
        e.max_M = std::max(e.max_M, dev);
        if (dev > thr_v) e.in_V = false;
    }
    e.in_B = in_B_nS(nu, q.S);
    if (!e.in_B) return e;
    BulkGeometry g = solve_bulk_geometry(nu, q.S);
    e.b = g.b;
    e.D = g.D;
    e.A = g.A;
    e.in_C = g.A >= q.alpha && std::abs(g.b - q.beta_n) <= 1.0 / q.omega_n &&
             std::abs(g.D - q.delta_n) <= std::sqrt(q.omega_n * q.alpha / q.S);
    return e;
}

}  // namespace rmtlab

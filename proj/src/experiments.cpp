#include "rmtlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "rmtlab/bulk_kernel.hpp"
#include "rmtlab/edge_kernel.hpp"
#include "rmtlab/fredholm.hpp"
#include "rmtlab/spectral.hpp"

namespace rmtlab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string key_n(const std::string& base, int n) { return base + "_n" + std::to_string(n); }

std::vector<double> top_spectrum(const HermitianMatrix& h) {
    return eigenvalues(h, SpectrumScale::sqrt_n_w).values;
}

double mean_of(const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean_of(v), s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

}  // namespace

double ExperimentConfig::tolerance(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
}

void ExperimentConfig::validate() const {
    if (replicas < 1) throw std::invalid_argument("replicas must be at least 1");
    if (workers < 1) throw std::invalid_argument("workers must be at least 1");
    ensemble.validate();
    for (int n : sizes)
        if (n < 2) throw std::invalid_argument("sizes must be at least 2");
}

bool ExperimentReport::all_checks_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second; });
}

void parallel_for(int count, int workers, const std::function<void(int)>& body) {
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr error;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < count; i += workers) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!error) error = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need two or more points");
    double mx = mean_of(x), my = mean_of(y), sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double m = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double f = cdf(sample[i]);
        d = std::max({d, f - i / m, (i + 1) / m - f});
    }
    return d;
}

ExperimentReport run_edge_experiment(const ExperimentConfig& c) {
    c.validate();
    if (c.ensemble.law.heavy_tailed())
        throw std::invalid_argument("law " + c.ensemble.law.name() +
                                    " has no finite fourth moment; the edge experiment needs one");
    const auto t0 = Clock::now();
    const int n = c.ensemble.n;
    const double kappa = c.ensemble.kappa;
    const double gamma = std::sqrt(1.0 + 4.0 * kappa), delta = 0.5 * gamma;
    const double scale = delta * std::cbrt(static_cast<double>(n));

    ExperimentReport r;
    r.experiment = "edge";
    r.columns = {"replica", "lambda_max", "scaled"};
    r.rows.resize(c.replicas);
    r.seeds.resize(c.replicas);
    parallel_for(c.replicas, c.workers, [&](int i) {
        EnsembleSpec spec = c.ensemble;
        spec.seed = replica_seed(c.ensemble.seed, static_cast<std::uint64_t>(i));
        double top = top_spectrum(compose_gauss_divisible(spec)).back();
        r.seeds[i] = spec.seed;
        r.rows[i] = {static_cast<double>(i), top, (top - gamma * n) / scale};
    });
    std::vector<double> scaled;
    for (const auto& row : r.rows) scaled.push_back(row[2]);
    r.summary["mean_scaled"] = mean_of(scaled);
    if (c.replicas > 1) {
        auto cdf = [](double t) { return t < -10.0 ? 0.0 : (t > 8.0 ? 1.0 : tw_cdf(t)); };
        r.summary["ks_distance"] = ks_distance(scaled, cdf);
        r.summary["ks_threshold"] = c.tolerance("ks", 0.05);
        r.summary["tw_mean"] = tw_mean();
        r.checks["ks"] = r.summary["ks_distance"] <= r.summary["ks_threshold"];
        if (n >= 200) r.checks["mean_window"] = r.summary["mean_scaled"] >= -2.5 && r.summary["mean_scaled"] <= -1.0;
    }
    r.wall_clock = seconds_since(t0);
    return r;
}

ExperimentReport run_bulk_experiment(const ExperimentConfig& c) {
    c.validate();
    const double kappa = c.ensemble.kappa;
    if (!(std::abs(c.d) < std::sqrt(1.0 + 4.0 * kappa))) throw std::invalid_argument("d outside the bulk");
    if (c.psi_scale < 0.0) throw std::invalid_argument("psi must be nonnegative");
    const auto t0 = Clock::now();
    const int n = c.ensemble.n;
    const double dn = std::floor(c.d * n);
    const double half_gap = 0.5 * c.gap, half_window = 0.5 * c.window;
    auto psi = [&](double x) { return c.psi_scale * bump(x); };

    ExperimentReport r;
    r.experiment = "bulk";
    r.columns = {"replica", "laplace", "gap_empty", "window_count"};
    r.rows.resize(c.replicas);
    r.seeds.resize(c.replicas);
    parallel_for(c.replicas, c.workers, [&](int i) {
        EnsembleSpec spec = c.ensemble;
        spec.seed = replica_seed(c.ensemble.seed, static_cast<std::uint64_t>(i));
        std::vector<double> lam = top_spectrum(compose_gauss_divisible(spec));
        double sum = 0.0, count = 0.0;
        bool empty = true;
        for (double l : lam) {
            double x = l - dn;
            sum += psi(x);
            if (std::abs(x) < half_gap) empty = false;
            if (std::abs(x) < half_window) count += 1.0;
        }
        r.seeds[i] = spec.seed;
        r.rows[i] = {static_cast<double>(i), std::exp(-sum), empty ? 1.0 : 0.0, count};
    });
    std::vector<double> lap, gap, cnt;
    for (const auto& row : r.rows) {
        lap.push_back(row[1]);
        gap.push_back(row[2]);
        cnt.push_back(row[3]);
    }
    const double beta = limiting_bulk_params(c.d, kappa).second;
    auto sine = [beta](double x, double y) { return sine_kernel_real(beta, x, y); };
    r.summary["beta"] = beta;
    r.summary["mc_laplace"] = mean_of(lap);
    r.summary["mc_laplace_stderr"] = stderr_of(lap);
    r.summary["fredholm_laplace"] =
        c.psi_scale == 0.0 ? 1.0 : laplace_functional(sine, psi, Domain::interval(-1.0, 1.0, {0.0})).value;
    r.summary["mc_gap"] = mean_of(gap);
    r.summary["mc_gap_stderr"] = stderr_of(gap);
    r.summary["fredholm_gap"] = sine_gap(beta, c.gap).value;
    r.summary["mean_window_count"] = mean_of(cnt);
    r.summary["expected_window_count"] = semicircle_density(c.d, kappa) * c.window;
    r.summary["laplace_error"] = std::abs(r.summary["mc_laplace"] - r.summary["fredholm_laplace"]);
    r.summary["gap_error"] = std::abs(r.summary["mc_gap"] - r.summary["fredholm_gap"]);
    if (c.replicas > 1) {
        r.checks["laplace"] = r.summary["laplace_error"] <= c.tolerance("laplace", 0.03);
        r.checks["gap"] = r.summary["gap_error"] <= c.tolerance("gap", 0.03);
        r.checks["density"] = std::abs(r.summary["mean_window_count"] / r.summary["expected_window_count"] - 1.0) <=
                              c.tolerance("density", 0.10);
    }
    r.wall_clock = seconds_since(t0);
    return r;
}

ExperimentReport run_lemma_checks(const ExperimentConfig& c, const MatrixSampler& sampler) {
    c.validate();
    if (c.replicas < 100) throw std::invalid_argument("lemma checks need at least 100 replicas");
    const auto t0 = Clock::now();
    std::vector<int> sizes = c.sizes.empty() ? std::vector<int>{50, 100, 200, 400} : c.sizes;
    const cplx zs[2] = {cplx(0.0, 1.0), cplx(0.5, 0.5)};
    const EdgeConstants ec = edge_constants(c.ensemble.kappa);
    const MollifierCentres centres = mollifier_centres(ec);
    const double betas[4] = {2.0 * ec.b0, ec.b0, ec.b0, ec.b0};
    const int derivs[4] = {1, 0, 1, 2};

    ExperimentReport r;
    r.experiment = "lemmas";
    r.columns = {"n", "replica", "re_m_i", "im_m_i", "re_m_half", "im_m_half", "s1", "s2", "s3", "s4"};
    std::vector<double> logn, logvar[2], logbias[2], logn_big, logsecond[4];
    double worst_ratio = 0.0;
    for (int n : sizes) {
        const std::uint64_t base = hash_key(c.ensemble.seed, 3, static_cast<std::uint64_t>(n), 0);
        std::vector<std::vector<double>> rows(c.replicas);
        parallel_for(c.replicas, c.workers, [&](int i) {
            std::uint64_t s = replica_seed(base, static_cast<std::uint64_t>(i));
            HermitianMatrix x = sampler ? sampler(n, s) : sample_wigner(EnsembleSpec{n, c.ensemble.law, 0.0, s});
            std::vector<double> y = eigenvalues(x, SpectrumScale::x_over_sqrt_n).values;
            std::vector<double> nu(y.size());
            for (std::size_t k = 0; k < y.size(); ++k) nu[k] = y[k] * n;
            cplx m0 = stieltjes_mn(y, zs[0]), m1 = stieltjes_mn(y, zs[1]);
            std::vector<double> row{static_cast<double>(n), static_cast<double>(i), m0.real(), m0.imag(),
                                    m1.real(), m1.imag()};
            for (int k = 0; k < 4; ++k)
                row.push_back(linear_statistic(
                    nu, [&](double t) { return mollifier_psi(betas[k], ec.epsilon, ec.kappa, t, derivs[k]); },
                    centres.values[k]));
            rows[i] = std::move(row);
        });
        for (int i = 0; i < c.replicas; ++i) r.seeds.push_back(replica_seed(base, static_cast<std::uint64_t>(i)));
        logn.push_back(std::log(static_cast<double>(n)));
        for (int k = 0; k < 2; ++k) {
            cplx mean = 0.0;
            for (const auto& row : rows) mean += cplx(row[2 + 2 * k], row[3 + 2 * k]);
            mean /= static_cast<double>(c.replicas);
            double var = 0.0;
            for (const auto& row : rows) var += std::norm(cplx(row[2 + 2 * k], row[3 + 2 * k]) - mean);
            var /= static_cast<double>(c.replicas - 1);
            const double v = zs[k].imag();
            const double ratio = n * v * v * var / 2.0;
            const double bias = std::abs(mean - semicircle_transform(zs[k]));
            const std::string tag = k == 0 ? "z_i" : "z_half";
            r.summary[key_n("var_" + tag, n)] = var;
            r.summary[key_n("ratio_" + tag, n)] = ratio;
            r.summary[key_n("bias_" + tag, n)] = bias;
            r.summary[key_n("n_bias_" + tag, n)] = n * bias;
            worst_ratio = std::max(worst_ratio, ratio);
            logvar[k].push_back(std::log(var));
            logbias[k].push_back(std::log(bias));
        }
        if (n >= 100) logn_big.push_back(std::log(static_cast<double>(n)));
        for (int k = 0; k < 4; ++k) {
            double m2 = 0.0;
            for (const auto& row : rows) m2 += row[6 + k] * row[6 + k];
            m2 /= static_cast<double>(c.replicas);
            r.summary[key_n("second_moment_s" + std::to_string(k + 1), n)] = m2;
            if (n >= 100) logsecond[k].push_back(std::log(m2));
        }
        for (auto& row : rows) r.rows.push_back(std::move(row));
    }
    r.summary["worst_variance_ratio"] = worst_ratio;
    r.checks["variance_constant"] = worst_ratio <= c.tolerance("variance_ratio", 1.5);
    if (sizes.size() >= 2) {
        const double lo = c.tolerance("slope_lo", -2.4), hi = c.tolerance("slope_hi", -1.6);
        for (int k = 0; k < 2; ++k) {
            const std::string tag = k == 0 ? "z_i" : "z_half";
            double sv = regression_slope(logn, logvar[k]);
            double sb = regression_slope(logn, logbias[k]);
            r.summary["variance_slope_" + tag] = sv;
            r.summary["bias_slope_" + tag] = sb;
            r.checks["variance_rate_" + tag] = sv >= lo && sv <= hi;
            r.checks["bias_rate_" + tag] = sb <= c.tolerance("bias_slope", -0.6);
        }
    }
    if (logn_big.size() >= 2) {
        for (int k = 0; k < 4; ++k) {
            double s = regression_slope(logn_big, logsecond[k]);
            r.summary["second_moment_slope_s" + std::to_string(k + 1)] = s;
            r.checks["sublinear_s" + std::to_string(k + 1)] = s < c.tolerance("growth_slope", 1.0);
        }
    }
    r.wall_clock = seconds_since(t0);
    return r;
}

ExperimentReport run_event_probabilities(const ExperimentConfig& c) {
    c.validate();
    const auto t0 = Clock::now();
    std::vector<int> sizes = c.sizes.empty() ? std::vector<int>{100, 200, 400} : c.sizes;
    std::sort(sizes.begin(), sizes.end());
    const double kappa = c.ensemble.kappa;
    const EdgeConstants ec = edge_constants(kappa);
    const MollifierCentres centres = mollifier_centres(ec);

    ExperimentReport r;
    r.experiment = "events";
    r.columns = {"n",     "replica", "in_B", "in_C",     "in_V",     "in_F",     "in_G",  "in_H_prime",
                 "in_H",  "b",       "D",    "A",        "max_M",    "a_offset", "d_offset", "s1",
                 "s2",    "s3",      "s4"};
    const char* names[5] = {"C", "V", "F", "G", "H"};
    const int cols[5] = {3, 4, 5, 6, 8};
    std::vector<double> freq[5];
    bool h_in_g = true, vb_in_c = true;
    for (int n : sizes) {
        const std::uint64_t base = hash_key(c.ensemble.seed, 5, static_cast<std::uint64_t>(n), 0);
        BulkSequences seq = bulk_sequences(n, kappa, c.d, c.ensemble.law, base, c.reference_replicas);
        std::vector<std::vector<double>> rows(c.replicas);
        parallel_for(c.replicas, c.workers, [&](int i) {
            std::uint64_t s = replica_seed(base, static_cast<std::uint64_t>(i));
            std::vector<double> nu =
                eigenvalues(sample_wigner(EnsembleSpec{n, c.ensemble.law, 0.0, s}), SpectrumScale::sqrt_n_x).values;
            std::vector<double> shifted(nu.size());
            for (std::size_t k = 0; k < nu.size(); ++k) shifted[k] = nu[k] - seq.c_n * seq.S;
            BulkEvents be = bulk_event_sets(shifted, seq);
            EdgeMembership em = edge_membership(nu, ec, centres);
            std::vector<double> row{static_cast<double>(n), static_cast<double>(i), double(be.in_B),
                                    double(be.in_C), double(be.in_V), double(em.in_F), double(em.in_G),
                                    double(em.in_H_prime), double(em.in_H), be.b, be.D, be.A, be.max_M,
                                    em.a_offset, em.d_offset};
            for (double st : em.statistics) row.push_back(st);
            rows[i] = std::move(row);
        });
        double counts[5] = {0, 0, 0, 0, 0};
        for (int i = 0; i < c.replicas; ++i) {
            const auto& row = rows[i];
            r.seeds.push_back(replica_seed(base, static_cast<std::uint64_t>(i)));
            for (int k = 0; k < 5; ++k) counts[k] += row[cols[k]];
            if (row[8] > 0.5 && row[6] < 0.5) h_in_g = false;
            if (row[4] > 0.5 && row[2] > 0.5 && row[3] < 0.5) vb_in_c = false;
        }
        for (int k = 0; k < 5; ++k) {
            freq[k].push_back(counts[k] / c.replicas);
            r.summary[key_n(std::string("freq_") + names[k], n)] = freq[k].back();
        }
        r.summary[key_n("c_n", n)] = seq.c_n;
        r.summary[key_n("beta_n", n)] = seq.beta_n;
        r.summary[key_n("alpha", n)] = seq.alpha;
        for (auto& row : rows) r.rows.push_back(std::move(row));
    }
    const double floor_freq = c.tolerance("frequency", 0.95);
    for (int k : {0, 3, 4}) {
        const std::string name = names[k];
        r.checks["frequency_" + name] = freq[k].back() >= floor_freq;
        r.checks["monotone_" + name] = std::is_sorted(freq[k].begin(), freq[k].end());
    }
    r.checks["H_subset_G"] = h_in_g;
    r.checks["VB_subset_C"] = vb_in_c;
    r.wall_clock = seconds_since(t0);
    return r;
}

ExperimentReport run_experiment(const ExperimentConfig& c) {
    if (c.experiment == "edge") return run_edge_experiment(c);
    if (c.experiment == "bulk") return run_bulk_experiment(c);
    if (c.experiment == "lemmas") return run_lemma_checks(c);
    if (c.experiment == "events") return run_event_probabilities(c);
    throw std::invalid_argument("unknown experiment '" + c.experiment + "'");
}

namespace {

const ElementLaw kCheckLaws[3] = {ElementLaw::parse("gaussian"), ElementLaw::parse("rademacher"),
                                  ElementLaw::parse("uniform")};

// Eigenvalues of sqrt(n) X for a Gaussian Wigner sample.
std::vector<double> sample_nu(int n, std::uint64_t seed) {
    return eigenvalues(sample_wigner(EnsembleSpec{n, ElementLaw{}, 0.0, seed}), SpectrumScale::sqrt_n_x).values;
}

}  // namespace

ExperimentReport check_identities(int pairs, int max_n, std::uint64_t seed) {
    const auto t0 = Clock::now();
    ExperimentReport r;
    r.experiment = "identities";
    r.columns = {"pair", "n", "re_z", "im_z", "trace_expansion", "minor_difference", "im_beta",
                 "im_beta_star", "slack_3", "slack_4", "slack_5", "slack_6"};
    double worst_identity = 0.0, worst_slack = 0.0;
    for (int p = 0; p < pairs; ++p) {
        CounterRng rng(seed, 21, static_cast<std::uint64_t>(p), 0);
        const int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n - 1));
        const cplx z(4.0 * rng.uniform() - 2.0, 0.1 + 1.9 * rng.uniform());
        const std::uint64_t s = rng();
        HermitianMatrix x = sample_wigner(EnsembleSpec{n, kCheckLaws[p % 3], 0.0, s});
        ResolventResiduals res = resolvent_identities_check(x, z);
        r.seeds.push_back(s);
        r.rows.push_back({double(p), double(n), z.real(), z.imag(), res.trace_expansion, res.minor_difference,
                          res.im_beta_identity, res.im_beta_star_identity, res.slack_im_beta,
                          res.slack_im_beta_star, res.slack_quadratic_form, res.slack_trace_difference});
        worst_identity = std::max({worst_identity, res.trace_expansion, res.minor_difference,
                                   res.im_beta_identity, res.im_beta_star_identity});
        worst_slack = std::min({worst_slack, res.slack_im_beta, res.slack_im_beta_star, res.slack_quadratic_form,
                                res.slack_trace_difference});
    }
    r.summary["worst_identity_residual"] = worst_identity;
    r.summary["worst_inequality_slack"] = worst_slack;
    r.checks["identities"] = worst_identity <= 1e-9;
    r.checks["inequalities"] = worst_slack >= -1e-12;
    r.wall_clock = seconds_since(t0);
    return r;
}

ExperimentReport check_contours(int bulk_geometries, int edge_geometries, std::uint64_t seed) {
    const auto t0 = Clock::now();
    ExperimentReport r;
    r.experiment = "contours";
    r.columns = {"kind", "n", "S", "x", "y", "contour", "reference", "difference"};
    double worst_bulk = 0.0, worst_edge = 0.0;
    for (int g = 0; g < bulk_geometries; ++g) {
        CounterRng rng(seed, 22, static_cast<std::uint64_t>(g), 0);
        int n = 0;
        double S = 0.0;
        std::vector<double> nu;
        do {
            n = 1 + static_cast<int>(rng() % 10);
            S = n * (0.5 + 1.5 * rng.uniform());
            nu = sample_nu(n, rng());
        } while (!in_B_nS(nu, S));
        BulkGeometry geo = solve_bulk_geometry(nu, S);
        double u = 4.0 * rng.uniform() - 2.0, v = 4.0 * rng.uniform() - 2.0;
        double k = kernel_descent(geo, u, v);
        double ref = kernel_reference(nu, S, u - S * geo.D, v - S * geo.D).real();
        double diff = std::abs(k - ref) / std::max(1.0, std::abs(ref));
        worst_bulk = std::max(worst_bulk, diff);
        r.rows.push_back({0.0, double(n), S, u, v, k, ref, diff});
    }
    for (int g = 0; g < edge_geometries; ++g) {
        CounterRng rng(seed, 23, static_cast<std::uint64_t>(g), 0);
        const int n = 2 + static_cast<int>(rng() % 4);
        const double kappa = 0.5 + 1.5 * rng.uniform();
        const double S = kappa * n;
        const EdgeConstants ec = edge_constants(kappa);
        std::vector<double> nu = sample_nu(n, rng());
        EdgeGeometry geo = solve_edge_geometry(nu, S, ec.alpha0, ec.beta0);
        double xi = 4.0 * rng.uniform() - 2.0, eta = 4.0 * rng.uniform() - 2.0;
        double k = edge_kernel_scaled(geo, xi, eta);
        const double sc = geo.d * std::cbrt(S);
        double ref =
            sc * std::exp((eta - xi) * geo.b * sc) *
            kernel_reference(nu, S, geo.a * S + xi * sc, geo.a * S + eta * sc).real();
        double diff = std::abs(k - ref) / std::max(1.0, std::abs(ref));
        worst_edge = std::max(worst_edge, diff);
        r.rows.push_back({1.0, double(n), S, xi, eta, k, ref, diff});
    }
    r.summary["worst_bulk_difference"] = worst_bulk;
    r.summary["worst_edge_difference"] = worst_edge;
    r.checks["bulk_contours"] = worst_bulk <= 1e-6;
    r.checks["edge_contours"] = worst_edge <= 1e-6;
    r.wall_clock = seconds_since(t0);
    return r;
}

ExperimentReport check_descent_bounds(int geometries, int points, std::uint64_t seed) {
    const auto t0 = Clock::now();
    ExperimentReport r;
    r.experiment = "descent_bounds";
    r.columns = {"kind", "n", "points", "worst_slack", "where"};
    const EdgeConstants ec = edge_constants(1.0);
    int violations = 0, skipped = 0;
    for (int g = 0; g < geometries; ++g) {
        CounterRng rng(seed, 24, static_cast<std::uint64_t>(g), 0);
        const int n = 20 + static_cast<int>(rng() % 181);
        std::vector<double> nu = sample_nu(n, rng());
        const double S = static_cast<double>(n);
        if (in_B_nS(nu, S)) {
            BoundCheck b = descent_bound_check(solve_bulk_geometry(nu, S), 10.0, points);
            if (!b.holds) ++violations;
            r.rows.push_back({0.0, double(n), double(b.points), b.worst_slack, b.where});
        } else {
            ++skipped;
        }
        EdgeGeometry geo = solve_edge_geometry(nu, S, ec.alpha0, ec.beta0);
        if (geo.in_F) {
            BoundCheck e = edge_bound_check(geo, 10.0, points);
            if (!e.holds) ++violations;
            r.rows.push_back({1.0, double(n), double(e.points), e.worst_slack, e.where});
        } else {
            ++skipped;
        }
    }
    r.summary["violations"] = violations;
    r.summary["skipped_geometries"] = skipped;
    r.checks["no_violations"] = violations == 0;
    r.wall_clock = seconds_since(t0);
    return r;
}

ExperimentReport check_fredholm(int pairs, std::uint64_t seed) {
    const auto t0 = Clock::now();
    ExperimentReport r;
    r.experiment = "fredholm";
    r.columns = {"pair", "lhs", "rhs"};
    double worst_rank = 0.0;
    for (int rank = 0; rank <= 5; ++rank) {
        FiniteRankOperator op = random_finite_rank(rank, 6, 0.8, hash_key(seed, 25, rank, 0));
        FredholmProblem p;
        p.kernel = op.kernel();
        p.domain = Domain::interval(-1.0, 1.0);
        double diff = std::abs(nystrom_det(p).value - op.det_i_minus());
        r.summary["finite_rank_error_r" + std::to_string(rank)] = diff;
        worst_rank = std::max(worst_rank, diff);
    }
    const DetResult tw0 = tw_cdf_detail(0.0);
    r.summary["tw_at_zero"] = tw0.value;
    r.summary["tw_at_zero_gap"] = tw0.convergence_gap;

    bool all = true;
    for (int p = 0; p < pairs; ++p) {
        CounterRng rng(seed, 26, static_cast<std::uint64_t>(p), 0);
        const int rb = 1 + static_cast<int>(rng() % 3), rd = 1 + static_cast<int>(rng() % 3);
        FiniteRankOperator b = random_finite_rank(rb, 6, 2.0 * rng.uniform(), rng());
        FiniteRankOperator delta = random_finite_rank(rd, 6, rng.uniform(), rng());
        FiniteRankOperator a{b.coeffs + delta.coeffs};
        PerturbationBound pb = det_perturbation_bound(a, b);
        if (!pb.holds()) all = false;
        r.rows.push_back({double(p), pb.lhs, pb.rhs});
    }
    FiniteRankOperator a = random_finite_rank(2, 6, 0.7, seed);
    FiniteRankOperator zero{Eigen::MatrixXd::Zero(6, 6)};
    r.summary["worst_finite_rank_error"] = worst_rank;
    r.checks["finite_rank"] = worst_rank <= 1e-10;
    r.checks["tw_at_zero"] = std::abs(tw0.value - 0.9694) <= 1e-3 && tw0.convergence_gap <= 1e-10;
    r.checks["perturbation_pairs"] = all;
    r.checks["perturbation_equal"] = det_perturbation_bound(a, a).lhs == 0.0 && det_perturbation_bound_check(a, a);
    r.checks["perturbation_zero"] = det_perturbation_bound_check(a, zero);
    r.wall_clock = seconds_since(t0);
    return r;
}

}  // namespace rmtlab

// One PASS/FAIL line per acceptance criterion; tolerances are fixed here.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "rmtlab/airy.hpp"
#include "rmtlab/bulk_kernel.hpp"
#include "rmtlab/edge_kernel.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/experiments.hpp"
#include "rmtlab/spectral.hpp"

using namespace rmtlab;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const std::string& name, bool ok, double seconds, double limit, const std::string& detail) {
    const bool in_time = seconds <= limit;
    const bool pass = ok && in_time;
    if (!pass) ++failures;
    std::printf("%s %2d %-28s %8.1f s (limit %.0f s)  %s%s\n", pass ? "PASS" : "FAIL", id, name.c_str(), seconds,
                limit, detail.c_str(), in_time ? "" : "  [over time]");
    std::fflush(stdout);
}

std::string failed_checks(const ExperimentReport& r) {
    std::string s;
    for (const auto& [k, v] : r.checks)
        if (!v) s += (s.empty() ? " failed:" : ",") + (" " + k);
    return s;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<double> wigner_nu(int n, std::uint64_t seed) {
    return eigenvalues(sample_wigner(EnsembleSpec{n, ElementLaw{}, 0.0, seed}), SpectrumScale::sqrt_n_x).values;
}

std::vector<double> grid(double lo, double hi, int points) {
    std::vector<double> g;
    for (int k = 0; k < points; ++k) g.push_back(lo + (hi - lo) * k / (points - 1));
    return g;
}

void criterion_identities() {
    auto t0 = Clock::now();
    ExperimentReport r = check_identities(100, 12, 1);
    report(1, "exact resolvent identities", r.all_checks_pass(), since(t0), 10.0,
           fmt("worst identity residual %.2e, worst slack %.2e", r.summary["worst_identity_residual"],
               r.summary["worst_inequality_slack"]) + failed_checks(r));
}

void criterion_contours() {
    auto t0 = Clock::now();
    ExperimentReport r = check_contours(20, 10, 2);
    report(2, "contour equivalence", r.all_checks_pass(), since(t0), 120.0,
           fmt("bulk %.2e, edge %.2e (tol 1e-6)", r.summary["worst_bulk_difference"],
               r.summary["worst_edge_difference"]) + failed_checks(r));
}

void criterion_bounds() {
    auto t0 = Clock::now();
    ExperimentReport r = check_descent_bounds(50, 100, 3);
    report(3, "descent bounds", r.all_checks_pass(), since(t0), 60.0,
           fmt("%.0f violations over 50 geometries", r.summary["violations"]) + failed_checks(r));
}

void criterion_bulk_kernel() {
    auto t0 = Clock::now();
    const std::uint64_t seed = 4;
    const auto pts = grid(-2.0, 2.0, 9);
    double worst[2] = {0.0, 0.0};
    bool bounded = true;
    double worst_ratio = 0.0;
    const int sizes[2] = {100, 400};
    for (int k = 0; k < 2; ++k) {
        const int n = sizes[k];
        const double S = n;
        BulkGeometry g = solve_bulk_geometry(wigner_nu(n, seed), S);
        const double sa = S * g.A;
        for (double u : pts)
            for (double v : pts) {
                double diff = std::abs(kernel_descent(g, u, v) - sine_kernel(g.b, u, v));
                double bound = 10.0 / std::sqrt(sa) * std::exp(3.0 * u * u / sa);
                worst[k] = std::max(worst[k], diff);
                worst_ratio = std::max(worst_ratio, diff / bound);
                if (diff > bound) bounded = false;
            }
    }
    report(4, "bulk kernel to sine kernel", worst[1] < worst[0] && bounded, since(t0), 300.0,
           fmt("max error n=100 %.4f, n=400 %.4f; worst error/bound %.3f", worst[0], worst[1], worst_ratio));
}

void criterion_edge_kernel() {
    auto t0 = Clock::now();
    const std::uint64_t seed = 5;
    const auto pts = grid(-2.0, 2.0, 9);
    const EdgeConstants c = edge_constants(1.0);
    double worst[2] = {0.0, 0.0};
    const int sizes[2] = {100, 400};
    bool decay = true;
    double worst_decay = 0.0;
    for (int k = 0; k < 2; ++k) {
        const int n = sizes[k];
        EdgeGeometry g = solve_edge_geometry(wigner_nu(n, seed), n, c.alpha0, c.beta0);
        for (double xi : pts)
            for (double eta : pts)
                worst[k] = std::max(worst[k], std::abs(edge_kernel_scaled(g, xi, eta) - airy_kernel(xi, eta)));
        if (n == 400) {
            const double c0 = edge_kernel_scaled(g, 0.0, 0.0);
            for (double xi : grid(0.0, 5.0, 21)) {
                double kd = edge_kernel_scaled(g, xi, xi);
                worst_decay = std::max(worst_decay, kd / (c0 * std::exp(-xi)));
                if (kd > c0 * std::exp(-xi)) decay = false;
            }
        }
    }
    report(5, "edge kernel to Airy kernel", worst[1] < worst[0] && worst[1] < 0.05 && decay, since(t0), 300.0,
           fmt("max error n=100 %.4f, n=400 %.4f; max K(x,x)/(K(0,0)e^-x) %.3f", worst[0], worst[1],
               worst_decay));
}

void criterion_edge_mc() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    for (const char* law : {"gaussian", "rademacher"}) {
        ExperimentConfig c;
        c.experiment = "edge";
        c.ensemble = EnsembleSpec{200, ElementLaw::parse(law), 1.0, 6};
        c.replicas = 2000;
        c.workers = workers();
        ExperimentReport r = run_edge_experiment(c);
        const bool pass = r.summary["ks_distance"] <= 0.05;
        ok = ok && pass;
        detail += std::string(law) + fmt(" KS %.4f mean %.3f; ", r.summary["ks_distance"], r.summary["mean_scaled"]);
    }
    report(6, "largest eigenvalue law", ok, since(t0), 1800.0, detail + "(tol 0.05)");
}

void criterion_bulk_mc() {
    auto t0 = Clock::now();
    ExperimentConfig c;
    c.experiment = "bulk";
    c.ensemble = EnsembleSpec{400, ElementLaw{}, 1.0, 7};
    c.replicas = 2000;
    c.workers = workers();
    ExperimentReport r = run_bulk_experiment(c);
    const bool ok = r.summary["laplace_error"] <= 0.03 && r.summary["gap_error"] <= 0.03;
    report(7, "bulk local statistics", ok, since(t0), 1800.0,
           fmt("laplace MC %.4f vs %.4f, gap MC %.4f vs %.4f (tol 0.03)", r.summary["mc_laplace"],
               r.summary["fredholm_laplace"], r.summary["mc_gap"], r.summary["fredholm_gap"]));
}

void criterion_lemmas() {
    auto t0 = Clock::now();
    ExperimentConfig c;
    c.experiment = "lemmas";
    c.ensemble = EnsembleSpec{400, ElementLaw{}, 1.0, 8};
    c.replicas = 400;
    c.sizes = {50, 100, 200, 400};
    c.workers = workers();
    ExperimentReport r = run_lemma_checks(c);
    report(8, "stieltjes concentration", r.all_checks_pass(), since(t0), 900.0,
           fmt("variance ratio %.3f, variance slopes %.2f %.2f, bias slope %.2f", r.summary["worst_variance_ratio"],
               r.summary["variance_slope_z_i"], r.summary["variance_slope_z_half"], r.summary["bias_slope_z_i"]) +
               fmt(", growth slopes %.2f %.2f %.2f %.2f", r.summary["second_moment_slope_s1"],
                   r.summary["second_moment_slope_s2"], r.summary["second_moment_slope_s3"],
                   r.summary["second_moment_slope_s4"]) +
               failed_checks(r));
}

void criterion_events() {
    auto t0 = Clock::now();
    ExperimentConfig c;
    c.experiment = "events";
    c.ensemble = EnsembleSpec{400, ElementLaw{}, 1.0, 9};
    c.replicas = 200;
    c.reference_replicas = 200;
    c.sizes = {100, 200, 400};
    c.workers = workers();
    ExperimentReport r = run_event_probabilities(c);
    std::string detail;
    for (const char* s : {"C", "G", "H"}) {
        detail += std::string(s) + ":";
        for (int n : c.sizes) detail += fmt(" %.3f", r.summary["freq_" + std::string(s) + "_n" + std::to_string(n)]);
        detail += "; ";
    }
    report(9, "event frequencies", r.all_checks_pass(), since(t0), 1200.0, detail + failed_checks(r));
}

void criterion_fredholm() {
    auto t0 = Clock::now();
    ExperimentReport r = check_fredholm(100, 10);
    report(10, "fredholm determinants", r.all_checks_pass(), since(t0), 60.0,
           fmt("finite rank %.2e, F(0) = %.6f", r.summary["worst_finite_rank_error"], r.summary["tw_at_zero"]) +
               failed_checks(r));
}

}  // namespace

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
    void (*all[10])() = {criterion_identities, criterion_contours, criterion_bounds,  criterion_bulk_kernel,
                         criterion_edge_kernel, criterion_edge_mc,  criterion_bulk_mc, criterion_lemmas,
                         criterion_events,      criterion_fredholm};
    std::vector<int> chosen;
    for (int i = 1; i < argc; ++i) chosen.push_back(std::atoi(argv[i]));
    if (chosen.empty())
        for (int i = 1; i <= 10; ++i) chosen.push_back(i);
    for (int id : chosen)
        if (id >= 1 && id <= 10) all[id - 1]();
    std::printf("%d of %zu criteria failed\n", failures, chosen.size());
    return failures == 0 ? 0 : 1;
}

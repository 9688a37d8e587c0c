#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "rmtlab/airy.hpp"
#include "rmtlab/bulk_kernel.hpp"
#include "rmtlab/edge_kernel.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/experiments.hpp"
#include "rmtlab/fredholm.hpp"
#include "rmtlab/report.hpp"
#include "rmtlab/spectral.hpp"

using namespace rmtlab;

namespace {

struct Common {
    int n = 200;
    double kappa = 1.0;
    std::string law = "gaussian";
    std::uint64_t seed = 1;
    int replicas = 100;
    std::string out = "-";
    std::string format = "csv";
    std::string config;
    int workers = 1;

    CLI::Option* n_opt = nullptr;
    CLI::Option* kappa_opt = nullptr;
    CLI::Option* law_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* replicas_opt = nullptr;
    CLI::Option* workers_opt = nullptr;
};

void add_common(CLI::App* app, Common& c) {
    c.n_opt = app->add_option("--n", c.n, "matrix dimension")->check(CLI::PositiveNumber);
    c.kappa_opt = app->add_option("--kappa", c.kappa, "weight of the GUE component")->check(CLI::NonNegativeNumber);
    c.law_opt = app->add_option("--law", c.law, "gaussian, rademacher, uniform, student_t:<df>, symmetric_pareto:<alpha>");
    c.seed_opt = app->add_option("--seed", c.seed, "base seed");
    c.replicas_opt = app->add_option("--replicas", c.replicas, "Monte Carlo replicas")->check(CLI::PositiveNumber);
    c.workers_opt = app->add_option("--workers", c.workers, "threads")->check(CLI::PositiveNumber);
    app->add_option("--out", c.out, "output path, - for stdout");
    app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--config", c.config, "flat JSON config; explicit flags win")->check(CLI::ExistingFile);
}

ExperimentConfig make_config(const Common& c) {
    ExperimentConfig cfg;
    if (!c.config.empty()) {
        std::ifstream in(c.config);
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = parse_config(ss.str());
    }
    if (c.config.empty() || c.n_opt->count()) cfg.ensemble.n = c.n;
    if (c.config.empty() || c.kappa_opt->count()) cfg.ensemble.kappa = c.kappa;
    if (c.config.empty() || c.law_opt->count()) cfg.ensemble.law = ElementLaw::parse(c.law);
    if (c.config.empty() || c.seed_opt->count()) cfg.ensemble.seed = c.seed;
    if (c.config.empty() || c.replicas_opt->count()) cfg.replicas = c.replicas;
    if (c.config.empty() || c.workers_opt->count()) cfg.workers = c.workers;
    return cfg;
}

std::vector<double> grid(double lo, double hi, int points) {
    std::vector<double> g;
    for (int k = 0; k < points; ++k) g.push_back(points == 1 ? lo : lo + (hi - lo) * k / (points - 1));
    return g;
}

int finish(const ExperimentReport& r, const Common& c) {
    write_report(r, c.out, c.format);
    if (!r.all_checks_pass()) {
        for (const auto& [k, v] : r.checks)
            if (!v) std::cerr << "check failed: " << k << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian-divisible Wigner matrices: kernels, determinants and Monte Carlo checks"};
    app.require_subcommand(1);

    Common c;
    std::string matrix = "divisible";
    auto* sample = app.add_subcommand("sample", "eigenvalues of one sample; CSV columns: index, eigenvalue");
    add_common(sample, c);
    sample->add_option("--matrix", matrix, "divisible (sqrt(n) W) or wigner (sqrt(n) X)")
        ->check(CLI::IsMember({"divisible", "wigner"}));

    int points = 9;
    double lo = -2.0, hi = 2.0;
    auto* bulk = app.add_subcommand(
        "bulk-kernel", "centred kernel against the sine kernel; CSV columns: u, v, kernel, sine, difference");
    add_common(bulk, c);
    bulk->add_option("--points", points, "grid points per axis")->check(CLI::PositiveNumber);
    bulk->add_option("--lo", lo);
    bulk->add_option("--hi", hi);

    auto* edge = app.add_subcommand(
        "edge-kernel", "scaled edge kernel against the Airy kernel; CSV columns: xi, eta, kernel, airy, difference");
    add_common(edge, c);
    edge->add_option("--points", points, "grid points per axis")->check(CLI::PositiveNumber);
    edge->add_option("--lo", lo);
    edge->add_option("--hi", hi);

    double tmin = -8.0, tmax = 4.0, step = 0.5;
    auto* tw = app.add_subcommand("tw-table", "Tracy-Widom CDF; CSV columns: t, F, order, gap");
    add_common(tw, c);
    tw->add_option("--tmin", tmin);
    tw->add_option("--tmax", tmax);
    tw->add_option("--step", step)->check(CLI::PositiveNumber);

    std::string kind;
    double d = 0.0, gap = 0.5, psi_scale = 1.0;
    std::vector<int> sizes;
    auto* exp = app.add_subcommand(
        "experiment",
        "Monte Carlo experiments. CSV columns: edge: replica, lambda_max, scaled; bulk: replica, laplace, "
        "gap_empty, window_count; lemmas: n, replica, m_n at i and 0.5+0.5i, four linear statistics; events: n, "
        "replica, set indicators, b, D, A, max_M, a_offset, d_offset, four statistics");
    add_common(exp, c);
    exp->add_option("kind", kind, "edge | bulk | lemmas | events")
        ->required()
        ->check(CLI::IsMember({"edge", "bulk", "lemmas", "events"}));
    auto* d_opt = exp->add_option("--d", d, "bulk position");
    auto* gap_opt = exp->add_option("--gap", gap, "bulk gap length");
    auto* psi_opt = exp->add_option("--psi-scale", psi_scale, "height of the bump test function");
    auto* sizes_opt = exp->add_option("--sizes", sizes, "matrix sizes for lemmas and events");

    std::string what;
    int count = 0;
    auto* check = app.add_subcommand("check", "finite checks; exit code 2 on failure");
    add_common(check, c);
    check->add_option("what", what, "identities | contours | bounds | fredholm")
        ->required()
        ->check(CLI::IsMember({"identities", "contours", "bounds", "fredholm"}));
    check->add_option("--count", count, "number of random cases (0 selects the default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        ExperimentConfig cfg = make_config(c);
        cfg.validate();
        const int n = cfg.ensemble.n;

        if (sample->parsed()) {
            HermitianMatrix h = matrix == "wigner" ? sample_wigner(cfg.ensemble) : compose_gauss_divisible(cfg.ensemble);
            ExperimentReport r;
            r.experiment = "sample";
            r.columns = {"index", "eigenvalue"};
            auto ev = eigenvalues(h, SpectrumScale::sqrt_n_w).values;
            for (std::size_t k = 0; k < ev.size(); ++k) r.rows.push_back({double(k), ev[k]});
            r.seeds = {cfg.ensemble.seed};
            return finish(r, c);
        }
        if (bulk->parsed()) {
            auto nu = eigenvalues(sample_wigner(cfg.ensemble), SpectrumScale::sqrt_n_x).values;
            const double S = cfg.ensemble.kappa * n;
            if (!(S > 0.0)) throw std::invalid_argument("bulk-kernel needs kappa > 0");
            BulkGeometry g = solve_bulk_geometry(nu, S);
            ExperimentReport r;
            r.experiment = "bulk-kernel";
            r.columns = {"u", "v", "kernel", "sine", "difference"};
            double worst = 0.0;
            for (double u : grid(lo, hi, points))
                for (double v : grid(lo, hi, points)) {
                    double k = kernel_descent(g, u, v), s = sine_kernel(g.b, u, v);
                    worst = std::max(worst, std::abs(k - s));
                    r.rows.push_back({u, v, k, s, k - s});
                }
            r.summary = {{"b", g.b}, {"D", g.D}, {"A", g.A}, {"S", S}, {"max_difference", worst}};
            r.seeds = {cfg.ensemble.seed};
            return finish(r, c);
        }
        if (edge->parsed()) {
            auto nu = eigenvalues(sample_wigner(cfg.ensemble), SpectrumScale::sqrt_n_x).values;
            const double S = cfg.ensemble.kappa * n;
            if (!(S > 0.0)) throw std::invalid_argument("edge-kernel needs kappa > 0");
            EdgeConstants ec = edge_constants(cfg.ensemble.kappa);
            EdgeGeometry g = solve_edge_geometry(nu, S, ec.alpha0, ec.beta0);
            ExperimentReport r;
            r.experiment = "edge-kernel";
            r.columns = {"xi", "eta", "kernel", "airy", "difference"};
            double worst = 0.0;
            for (double xi : grid(lo, hi, points))
                for (double eta : grid(lo, hi, points)) {
                    double k = edge_kernel_scaled(g, xi, eta), a = airy_kernel(xi, eta);
                    worst = std::max(worst, std::abs(k - a));
                    r.rows.push_back({xi, eta, k, a, k - a});
                }
            r.summary = {{"b", g.b}, {"a", g.a}, {"d", g.d}, {"S", S}, {"in_F", g.in_F ? 1.0 : 0.0},
                         {"max_difference", worst}};
            r.seeds = {cfg.ensemble.seed};
            return finish(r, c);
        }
        if (tw->parsed()) {
            ExperimentReport r;
            r.experiment = "tw-table";
            r.columns = {"t", "F", "order", "gap"};
            const int m = static_cast<int>(std::floor((tmax - tmin) / step + 1e-9));
            for (int k = 0; k <= m; ++k) {
                double t = tmin + k * step;
                DetResult dr = tw_cdf_detail(t);
                r.rows.push_back({t, dr.value, double(dr.order_used), dr.convergence_gap});
            }
            return finish(r, c);
        }
        if (exp->parsed()) {
            cfg.experiment = kind;
            if (c.config.empty() || d_opt->count()) cfg.d = d;
            if (c.config.empty() || gap_opt->count()) cfg.gap = gap;
            if (c.config.empty() || psi_opt->count()) cfg.psi_scale = psi_scale;
            if (sizes_opt->count()) cfg.sizes = sizes;
            return finish(run_experiment(cfg), c);
        }
        if (check->parsed()) {
            const std::uint64_t s = cfg.ensemble.seed;
            if (what == "identities") return finish(check_identities(count ? count : 100, 12, s), c);
            if (what == "contours") return finish(check_contours(count ? count : 20, count ? count : 10, s), c);
            if (what == "bounds") return finish(check_descent_bounds(count ? count : 50, 100, s), c);
            return finish(check_fredholm(count ? count : 100, s), c);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

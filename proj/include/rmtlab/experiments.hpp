#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rmtlab/ensembles.hpp"

namespace rmtlab {

struct ExperimentConfig {
    EnsembleSpec ensemble{200, ElementLaw{}, 1.0, 1};
    int replicas = 100;
    std::string experiment = "edge";   // edge | bulk | lemmas | events
    double d = 0.0;                    // bulk position, d_n = floor(d n)
    double gap = 0.5;                  // bulk gap length
    double psi_scale = 1.0;            // psi = psi_scale * bump
    double window = 4.0;               // bulk density window length
    std::vector<int> sizes;            // lemmas and events; empty selects the defaults
    int reference_replicas = 200;
    int workers = 1;
    std::map<std::string, double> tolerances;

    double tolerance(const std::string& key, double fallback) const;
    void validate() const;
};

struct ExperimentReport {
    std::string experiment;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, double> summary;
    std::map<std::string, bool> checks;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> notes;
    double wall_clock = 0.0;

    bool all_checks_pass() const;
    bool operator==(const ExperimentReport&) const = default;
};

// Runs body(i) for i in [0, count) on `workers` threads; each index is owned by one call.
void parallel_for(int count, int workers, const std::function<void(int)>& body);

// Least-squares slope of y against x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

// sup |F_emp - F| for the sorted sample.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

// Throws std::invalid_argument for heavy-tailed laws.
ExperimentReport run_edge_experiment(const ExperimentConfig& c);
ExperimentReport run_bulk_experiment(const ExperimentConfig& c);

// Returns the Wigner matrix X of dimension n for the given replica seed.
using MatrixSampler = std::function<HermitianMatrix(int n, std::uint64_t seed)>;
ExperimentReport run_lemma_checks(const ExperimentConfig& c, const MatrixSampler& sampler = {});
ExperimentReport run_event_probabilities(const ExperimentConfig& c);
ExperimentReport run_experiment(const ExperimentConfig& c);

// Finite checks shared by the command line and the test suites.
ExperimentReport check_identities(int pairs, int max_n, std::uint64_t seed);
ExperimentReport check_contours(int bulk_geometries, int edge_geometries, std::uint64_t seed);
ExperimentReport check_descent_bounds(int geometries, int points, std::uint64_t seed);
ExperimentReport check_fredholm(int pairs, std::uint64_t seed);

}  // namespace rmtlab

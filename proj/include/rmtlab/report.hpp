#pragma once

#include <string>

#include "rmtlab/experiments.hpp"

namespace rmtlab {

std::string emit_json(const ExperimentReport& r);
ExperimentReport parse_json(const std::string& text);

// Table rows, then '#' lines carrying the summary, checks, seeds and notes.
std::string emit_csv(const ExperimentReport& r);
ExperimentReport parse_csv(const std::string& text);

// Flat JSON object: n, law, kappa, seed, replicas, experiment, d, gap, psi_scale,
// window, sizes, reference_replicas, workers, tol_<name>.
ExperimentConfig parse_config(const std::string& json_text);
std::string emit_config(const ExperimentConfig& c);

void write_report(const ExperimentReport& r, const std::string& path, const std::string& format);

}  // namespace rmtlab

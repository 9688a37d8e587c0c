#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "rmtlab/rng.hpp"

namespace rmtlab {

using HermitianMatrix = Eigen::MatrixXcd;

inline constexpr double kSigma2 = 0.25;

struct EnsembleSpec {
    int n = 1;
    ElementLaw law;
    double kappa = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

// Seed of replica r derived from a base seed; distinct replicas are independent.
std::uint64_t replica_seed(std::uint64_t base, std::uint64_t replica);

HermitianMatrix sample_wigner(const EnsembleSpec& spec);
HermitianMatrix sample_gue(int n, std::uint64_t seed);
HermitianMatrix compose_gauss_divisible(const EnsembleSpec& spec);

}  // namespace rmtlab

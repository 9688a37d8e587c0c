#include "rmtlab/ensembles.hpp"

#include <cmath>
#include <stdexcept>

namespace rmtlab {

namespace {
constexpr std::uint64_t kStreamWigner = 0;
constexpr std::uint64_t kStreamGue = 1;
constexpr std::uint64_t kStreamReplica = 7;
}  // namespace

void EnsembleSpec::validate() const {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(kappa >= 0.0)) throw std::invalid_argument("kappa must be >= 0");
    law.validate();
}

std::uint64_t replica_seed(std::uint64_t base, std::uint64_t replica) {
    return hash_key(base, kStreamReplica, replica, 0);
}

HermitianMatrix sample_wigner(const EnsembleSpec& spec) {
    spec.validate();
    const int n = spec.n;
    const double off = std::sqrt(kSigma2 / 2.0);
    const double diag = std::sqrt(kSigma2);
    HermitianMatrix h(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = j; i < n; ++i) {
            CounterRng rng(spec.seed, kStreamWigner, i, j);
            if (i == j) {
                h(i, i) = {diag * spec.law.draw(rng), 0.0};
            } else {
                double re = off * spec.law.draw(rng);
                double im = off * spec.law.draw(rng);
                h(i, j) = {re, im};
                h(j, i) = {re, -im};
            }
        }
    }
    return h;
}

HermitianMatrix sample_gue(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const double off = std::sqrt(0.5);
    HermitianMatrix h(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = j; i < n; ++i) {
            CounterRng rng(seed, kStreamGue, i, j);
            if (i == j) {
                h(i, i) = {rng.normal(), 0.0};
            } else {
                double re = off * rng.normal();
                double im = off * rng.normal();
                h(i, j) = {re, im};
                h(j, i) = {re, -im};
            }
        }
    }
    return h;
}

HermitianMatrix compose_gauss_divisible(const EnsembleSpec& spec) {
    HermitianMatrix w = sample_wigner(spec);
    if (spec.kappa > 0.0) w += std::sqrt(spec.kappa) * sample_gue(spec.n, spec.seed);
    return w;
}

}  // namespace rmtlab

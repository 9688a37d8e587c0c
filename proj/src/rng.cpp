#include "rmtlab/rng.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace rmtlab {

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t hash_key(std::uint64_t seed, std::uint64_t stream, std::uint64_t i, std::uint64_t j) {
    std::uint64_t h = mix64(seed ^ 0x243F6A8885A308D3ULL);
    h = mix64(h ^ (stream + 0x13198A2E03707344ULL));
    h = mix64(h ^ (i + 0xA4093822299F31D0ULL));
    h = mix64(h ^ (j + 0x082EFA98EC4E6C89ULL));
    return h;
}

double CounterRng::uniform() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() {
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ElementLaw ElementLaw::parse(const std::string& text) {
    ElementLaw law;
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    bool has_param = colon != std::string::npos;
    double p = 0.0;
    if (has_param) {
        try {
            p = std::stod(text.substr(colon + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad law parameter in '" + text + "'");
        }
    }
    if (head == "gaussian") law.kind = LawKind::gaussian;
    else if (head == "rademacher") law.kind = LawKind::rademacher;
    else if (head == "uniform") law.kind = LawKind::uniform;
    else if (head == "student_t") {
        law.kind = LawKind::student_t;
        law.param = has_param ? p : 5.0;
    } else if (head == "symmetric_pareto" || head == "pareto") {
        law.kind = LawKind::symmetric_pareto;
        law.param = has_param ? p : 5.0;
    } else {
        throw std::invalid_argument("unknown law '" + head + "'");
    }
    law.validate();
    return law;
}

std::string ElementLaw::name() const {
    switch (kind) {
    case LawKind::gaussian: return "gaussian";
    case LawKind::rademacher: return "rademacher";
    case LawKind::uniform: return "uniform";
    case LawKind::student_t: return "student_t:" + std::to_string(param);
    case LawKind::symmetric_pareto: return "symmetric_pareto:" + std::to_string(param);
    }
    return "?";
}

void ElementLaw::validate() const {
    if (kind == LawKind::student_t && !(param > 2.0))
        throw std::invalid_argument("student_t needs df > 2 for a finite variance");
    if (kind == LawKind::symmetric_pareto && !(param > 2.0))
        throw std::invalid_argument("symmetric_pareto needs tail index > 2 for a finite variance");
}

bool ElementLaw::finite_fourth_moment() const {
    if (kind == LawKind::student_t || kind == LawKind::symmetric_pareto) return param > 4.0;
    return true;
}

double ElementLaw::draw(CounterRng& rng) const {
    switch (kind) {
    case LawKind::gaussian:
        return rng.normal();
    case LawKind::rademacher:
        return (rng() >> 63) ? 1.0 : -1.0;
    case LawKind::uniform:
        return std::sqrt(3.0) * (2.0 * rng.uniform() - 1.0);
    case LawKind::student_t: {
        std::student_t_distribution<double> t(param);
        return t(rng) / std::sqrt(param / (param - 2.0));
    }
    case LawKind::symmetric_pareto: {
        double mag = std::pow(rng.uniform(), -1.0 / param);
        double sign = (rng() >> 63) ? 1.0 : -1.0;
        return sign * mag / std::sqrt(param / (param - 2.0));
    }
    }
    return 0.0;
}

}  // namespace rmtlab

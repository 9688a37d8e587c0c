#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace rmtlab {

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_key(std::uint64_t seed, std::uint64_t stream, std::uint64_t i, std::uint64_t j);

// Counter-based generator: the output sequence is a pure function of the key,
// so any entry of any matrix can be drawn independently of evaluation order.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t key) : key_(key) {}
    CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t i, std::uint64_t j)
        : key_(hash_key(seed, stream, i, j)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return mix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

    // uniform on (0,1), never exactly 0 or 1
    double uniform();
    double normal();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

enum class LawKind { gaussian, rademacher, uniform, student_t, symmetric_pareto };

// Standardized scalar law (mean 0, variance 1). Matrix entries are scaled from it.
struct ElementLaw {
    LawKind kind = LawKind::gaussian;
    double param = 0.0;   // df for student_t, tail index for symmetric_pareto

    static ElementLaw parse(const std::string& text);   // "gaussian", "student_t:5", ...
    std::string name() const;

    void validate() const;
    bool finite_fourth_moment() const;
    bool heavy_tailed() const { return !finite_fourth_moment(); }

    double draw(CounterRng& rng) const;
};

}  // namespace rmtlab

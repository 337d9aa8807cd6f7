#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tdneat {

// Deterministic random stream used by every stochastic operator.
//
// Each draw is a fixed-cost transform of an mt19937_64 engine so that a
// stream can be replayed draw-for-draw from its seed:
//   uniform(), uniform_real(), uniform_int(), bernoulli()  - one engine word
//   gaussian()                                             - two engine words
// Operator headers document the order in which they consume draws.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform real in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi], both inclusive.
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Box-Muller (cosine branch); consumes exactly two engine words.
    double gaussian(double mean, double stdev) {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        return mean + stdev * mag * std::cos(2.0 * kPi * u2);
    }

private:
    static constexpr double kPi = 3.14159265358979323846;
    std::mt19937_64 engine_;
};

}  // namespace tdneat

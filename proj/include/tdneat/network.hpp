#pragma once

#include <span>
#include <vector>

#include "tdneat/genome.hpp"

namespace tdneat {

// Ring buffers holding the lagged samples a NARX network reads each step.
// All history before sample k = 0 reads as zero.
class DelayBuffer {
public:
    DelayBuffer(int du, int dy);

    void push_u(double u);  // current input u(k); call before reading u lags for step k
    void push_y(double y);  // network output y(k); call after step k

    double u_lag(int i) const;  // u(k - i), i in [0, du]
    double y_lag(int j) const;  // y(k - j), j in [1, dy]

private:
    std::vector<double> u_, y_;
    std::size_t u_pos_ = 0, y_pos_ = 0;
};

// Executable form of a genome: nodes in topological order of the enabled
// connections, bipolar-sigmoid (tanh) hidden units, a bias-free linear output.
// Immutable after compile(); simulation scratch state is per call, so one
// network may be simulated from many threads at once.
class CompiledNetwork {
public:
    // Excludes disabled connections.  Throws std::runtime_error if the
    // enabled graph contains a cycle (unreachable for genomes produced by the
    // variation operators).
    static CompiledNetwork compile(const Genome& g);

    int du() const { return du_; }
    int dy() const { return dy_; }

    // One step: u_inputs holds u lags 0..du, y_inputs holds y lags 1..dy.
    // Throws std::invalid_argument on a length mismatch.
    double step(std::span<const double> u_inputs, std::span<const double> y_inputs) const;

    // Free-run (parallel-model) simulation: y lags are the network's own
    // previous outputs, never the targets.
    std::vector<double> simulate_free_run(std::span<const double> u) const;

private:
    struct Incoming {
        int source_slot;
        double weight;
    };
    struct Unit {
        bool is_output;
        double bias;
        std::vector<Incoming> incoming;
    };

    double step_into(std::span<const double> u_inputs, std::span<const double> y_inputs,
                     std::vector<double>& values) const;

    int du_ = 0, dy_ = 0;
    std::vector<Unit> units_;  // hidden nodes in evaluation order, then the output
};

// Scaled-MSE fitness: -(1000 / N) * sum of squared errors; 0 iff y == t.
// Throws std::invalid_argument on length mismatch or empty trajectories.
double fitness(std::span<const double> y, std::span<const double> t);

// Plain mean squared error, kept arithmetically independent of fitness().
double mse(std::span<const double> y, std::span<const double> t);

}  // namespace tdneat

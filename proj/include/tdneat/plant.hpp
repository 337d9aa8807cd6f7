#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tdneat/rng.hpp"

namespace tdneat {

// Paired input/target trajectories for learning or verification.
struct Dataset {
    std::vector<double> u;
    std::vector<double> t;
    std::string label;
    std::size_t size() const { return u.size(); }
};

// Piecewise-constant excitation: the level is redrawn uniformly from
// [lo, hi] every `hold` samples.
struct ExcitationSpec {
    std::size_t length = 1000;
    std::size_t hold = 50;
    double lo = -1.0;
    double hi = 1.0;
    std::uint64_t seed = 1;
};

// Exemplary non-linear plant with time delays:
//   x(k) = -0.05*x(k-1) + 0.02*x(k-5) + sin(x(k-10)/10) + u(k-15),
// with every reference before k = 0 equal to zero.
std::vector<double> simulate_exemplary(std::span<const double> u);

// Elementwise division by 30 (the plant-response scaling).
std::vector<double> normalize(std::span<const double> x);

std::vector<double> generate_excitation(const ExcitationSpec& spec, Rng& rng);
std::vector<double> generate_excitation(const ExcitationSpec& spec);  // seeds from spec.seed

// Excitation -> plant -> normalized response, bundled as a dataset.
Dataset make_exemplary_dataset(const ExcitationSpec& spec, std::string label);

// The stock datasets used by the desk-scale experiments: a 1000-sample
// learning set (hold 50) and two verification sets probing generalization
// (hold 25 and hold 100), all on amplitude range [-1, 1].
Dataset exemplary_learning_dataset();
Dataset exemplary_verification_dataset_1();
Dataset exemplary_verification_dataset_2();

// Dataset CSV: UTF-8, header "k,u,t", LF line endings, k a contiguous
// 0-based index.  Values round-trip bit-exactly.  Loaders throw
// std::runtime_error diagnostics naming the offending line.
Dataset load_dataset(const std::string& path);
void save_dataset(const Dataset& dataset, const std::string& path);

// Input-only CSV with header "k,u" (produced by gen-input, consumed by
// simulate-plant).
std::vector<double> load_input_csv(const std::string& path);
void save_input_csv(std::span<const double> u, const std::string& path);

// Shortest representation that parses back to the identical double.
std::string format_double(double v);

}  // namespace tdneat

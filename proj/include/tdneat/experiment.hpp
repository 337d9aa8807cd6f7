#pragma once

#include <string>
#include <vector>

#include "tdneat/config.hpp"
#include "tdneat/plant.hpp"
#include "tdneat/population.hpp"

namespace tdneat {

struct MseSummary {
    double best = 0.0;     // smallest winner MSE
    double worst = 0.0;    // largest winner MSE
    double average = 0.0;  // mean over winners
};

struct AlgorithmResult {
    Algo algo = Algo::dneat;
    std::vector<RunResult> calls;                  // one evolve() per call
    std::vector<std::vector<double>> winner_mse;   // [dataset][call]
    std::vector<MseSummary> summary;               // [dataset]
};

// Winner-MSE table over the learning set and every verification set, for
// both algorithms, plus the per-generation aggregate curves behind it.
struct ExperimentReport {
    std::vector<std::string> dataset_labels;  // learning first
    std::vector<AlgorithmResult> algorithms;  // neat, then dneat
};

// Runs `config.calls` independent evolve() calls per algorithm, seeds
// config.seed .. config.seed + calls - 1 (the same seeds for both algorithms,
// so the comparison is paired), then re-simulates every call's winner in
// free run on every dataset.  Winner MSE is reported as -fitness / 1000.
ExperimentReport run_experiment(const Config& config, const Dataset& learning,
                                const std::vector<Dataset>& verifications, int threads);

// generation,mean_fitness,best_fitness,species_count,best_du,best_dy,
// best_node_count,best_connection_count
void write_generation_log(const RunResult& result, const std::string& path);

// One row per (dataset, algorithm) with best/worst/average winner MSE.
void write_report_csv(const ExperimentReport& report, const std::string& path);

// The same table aligned for reading, values displayed in units of 1e-2.
void write_report_text(const ExperimentReport& report, const std::string& path);
std::string report_text(const ExperimentReport& report);

// Mean over calls of the population-mean and best fitness per generation,
// one column pair per algorithm; plot-ready.
void write_curves_csv(const ExperimentReport& report, const std::string& path);

void write_winner(const Genome& winner, const std::string& path);

}  // namespace tdneat

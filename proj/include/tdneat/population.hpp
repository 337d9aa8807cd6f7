#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "tdneat/config.hpp"
#include "tdneat/genome.hpp"
#include "tdneat/network.hpp"
#include "tdneat/plant.hpp"
#include "tdneat/rng.hpp"

namespace tdneat {

struct Species {
    int id = 0;
    Genome representative;
    std::vector<Genome> members;
    double best_fitness_ever = -std::numeric_limits<double>::infinity();
    int last_improved_generation = 0;
};

struct GenerationStats {
    int generation = 0;
    double mean_fitness = 0.0;
    double best_fitness = 0.0;  // best-ever, non-decreasing over a run
    int species_count = 0;
    int best_du = 0;
    int best_dy = 0;
    int best_node_count = 0;
    int best_connection_count = 0;
};

struct RunResult {
    Genome winner;  // best-ever individual of the run
    std::vector<GenerationStats> log;
    double wall_seconds = 0.0;
    std::vector<int> extinction_generations;
};

// Every species died out; the evolution loop reinitializes the population.
struct ExtinctionError : std::runtime_error {
    ExtinctionError() : std::runtime_error("all species extinct") {}
};

// Free-run evaluation of one genome against a dataset: the scaled-MSE fitness of
// the simulated trajectory.  Pure, so population evaluation parallelizes
// without affecting results.  Divergent (non-finite) or astronomically bad
// trajectories clamp to kFitnessFloor so selection arithmetic stays finite.
constexpr double kFitnessFloor = -1e30;
double evaluate_genome(const Genome& g, const Dataset& dataset);

// Fills in fitness for genomes that lack one; `threads` as in parallel_for.
void evaluate_population(std::vector<Genome>& genomes, const Dataset& dataset, int threads);

// Assigns each genome to the first species (ascending id) whose
// representative lies within compatibility_threshold, founding a new species
// otherwise; re-chooses each representative as the member closest to the old
// one and drops species left empty.
std::vector<Species> speciate(const std::vector<Genome>& genomes,
                              std::vector<Species> previous_species, const Config& config,
                              int& next_species_id);

// Removes species whose best fitness has not improved for more than
// max_stagnation generations; the species_elitism best species (by current
// best member fitness) are always exempt.
std::vector<Species> update_stagnation(std::vector<Species> species, const Config& config,
                                       int generation);

// Builds the next generation: offspring quotas by largest-remainder shares of
// species-adjusted fitness mass, per-species elites copied verbatim, the rest
// bred from the top survival_threshold fraction by crossover + mutation.
// Returns exactly config.pop_size genomes; throws ExtinctionError when no
// species remain.
std::vector<Genome> reproduce(const std::vector<Species>& species, const Config& config,
                              Rng& rng, InnovationRegistry& registry);

// Full generational loop for config.generations generations (so the log has
// generations + 1 entries, generation 0 being the initial population).
// Deterministic for a fixed config: identical seeds give identical results
// for any evaluation thread count.
RunResult evolve(const Config& config, const Dataset& dataset, int threads);
RunResult evolve(const Config& config, const Dataset& dataset);  // threads from TDNEAT_THREADS

}  // namespace tdneat

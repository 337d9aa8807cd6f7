#include "tdneat/population.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "tdneat/parallel.hpp"
#include "tdneat/variation.hpp"

namespace tdneat {

double evaluate_genome(const Genome& g, const Dataset& dataset) {
    const CompiledNetwork net = CompiledNetwork::compile(g);
    const std::vector<double> y = net.simulate_free_run(dataset.u);
    double f = fitness(y, dataset.t);
    if (!std::isfinite(f) || f < kFitnessFloor) f = kFitnessFloor;
    return f;
}

void evaluate_population(std::vector<Genome>& genomes, const Dataset& dataset, int threads) {
    parallel_for(genomes.size(), threads, [&](std::size_t i) {
        if (!genomes[i].fitness) genomes[i].fitness = evaluate_genome(genomes[i], dataset);
    });
}

std::vector<Species> speciate(const std::vector<Genome>& genomes,
                              std::vector<Species> previous_species, const Config& config,
                              int& next_species_id) {
    std::vector<Species> species = std::move(previous_species);
    for (auto& s : species) s.members.clear();

    for (const Genome& g : genomes) {
        bool placed = false;
        for (auto& s : species) {
            if (compatibility_distance(g, s.representative, config) <
                config.compatibility_threshold) {
                s.members.push_back(g);
                placed = true;
                break;
            }
        }
        if (!placed) {
            Species fresh;
            fresh.id = next_species_id++;
            fresh.representative = g;
            fresh.members.push_back(g);
            species.push_back(std::move(fresh));
        }
    }

    std::vector<Species> alive;
    alive.reserve(species.size());
    for (auto& s : species) {
        if (s.members.empty()) continue;
        const Genome* closest = nullptr;
        double closest_distance = std::numeric_limits<double>::infinity();
        for (const Genome& m : s.members) {
            const double d = compatibility_distance(m, s.representative, config);
            if (d < closest_distance) {
                closest_distance = d;
                closest = &m;
            }
        }
        s.representative = *closest;
        alive.push_back(std::move(s));
    }
    return alive;
}

namespace {

double best_member_fitness(const Species& s) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Genome& m : s.members) best = std::max(best, m.fitness.value());
    return best;
}

// Integer quotas summing exactly to `total`, proportional to masses;
// remainder seats go to the largest fractional parts, ties to the lower index.
std::vector<int> largest_remainder_allocation(const std::vector<double>& masses, int total) {
    const std::size_t n = masses.size();
    const double sum = std::accumulate(masses.begin(), masses.end(), 0.0);
    std::vector<double> shares(n);
    for (std::size_t i = 0; i < n; ++i)
        shares[i] = sum > 0.0 ? total * (masses[i] / sum) : static_cast<double>(total) / n;

    std::vector<int> quotas(n);
    std::vector<double> remainders(n);
    int assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        quotas[i] = static_cast<int>(std::floor(shares[i]));
        remainders[i] = shares[i] - quotas[i];
        assigned += quotas[i];
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return remainders[a] > remainders[b];
    });
    int leftover = total - assigned;
    for (std::size_t i = 0; leftover > 0 && i < n; ++i, --leftover) ++quotas[order[i]];
    for (std::size_t i = n; leftover < 0 && i-- > 0;) {
        if (quotas[order[i]] > 0) {
            --quotas[order[i]];
            ++leftover;
        }
    }
    return quotas;
}

}  // namespace

std::vector<Species> update_stagnation(std::vector<Species> species, const Config& config,
                                       int generation) {
    std::vector<double> current_best(species.size());
    for (std::size_t i = 0; i < species.size(); ++i) {
        current_best[i] = best_member_fitness(species[i]);
        if (current_best[i] > species[i].best_fitness_ever) {
            species[i].best_fitness_ever = current_best[i];
            species[i].last_improved_generation = generation;
        }
    }

    std::vector<std::size_t> rank(species.size());
    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
        return current_best[a] > current_best[b];
    });
    std::vector<bool> exempt(species.size(), false);
    for (std::size_t i = 0; i < rank.size() && i < static_cast<std::size_t>(config.species_elitism);
         ++i)
        exempt[rank[i]] = true;

    std::vector<Species> survivors;
    survivors.reserve(species.size());
    for (std::size_t i = 0; i < species.size(); ++i) {
        const bool stagnant =
            generation - species[i].last_improved_generation > config.max_stagnation;
        if (exempt[i] || !stagnant) survivors.push_back(std::move(species[i]));
    }
    return survivors;
}

std::vector<Genome> reproduce(const std::vector<Species>& species, const Config& config,
                              Rng& rng, InnovationRegistry& registry) {
    if (species.empty()) throw ExtinctionError();

    // Explicit fitness sharing: shift by the population minimum so shares are
    // nonnegative, then divide each member's share by its species size.
    double min_fitness = std::numeric_limits<double>::infinity();
    for (const Species& s : species)
        for (const Genome& m : s.members) min_fitness = std::min(min_fitness, m.fitness.value());

    std::vector<double> masses(species.size(), 0.0);
    for (std::size_t i = 0; i < species.size(); ++i) {
        for (const Genome& m : species[i].members)
            masses[i] += (m.fitness.value() - min_fitness) / species[i].members.size();
    }
    const std::vector<int> quotas = largest_remainder_allocation(masses, config.pop_size);

    std::vector<Genome> next;
    next.reserve(config.pop_size);
    for (std::size_t i = 0; i < species.size(); ++i) {
        const int quota = quotas[i];
        if (quota == 0) continue;
        const Species& s = species[i];
        const int size = static_cast<int>(s.members.size());

        std::vector<const Genome*> ranked;
        ranked.reserve(s.members.size());
        for (const Genome& m : s.members) ranked.push_back(&m);
        std::stable_sort(ranked.begin(), ranked.end(), [](const Genome* a, const Genome* b) {
            return a->fitness.value() > b->fitness.value();
        });

        const int elites = std::min({config.elitism, size, quota});
        for (int e = 0; e < elites; ++e) next.push_back(*ranked[e]);

        int pool = static_cast<int>(std::ceil(size * config.survival_threshold));
        pool = std::min(size, std::max(pool, std::min(2, size)));
        for (int k = elites; k < quota; ++k) {
            const Genome& a = *ranked[rng.uniform_int(0, pool - 1)];
            const Genome& b = *ranked[rng.uniform_int(0, pool - 1)];
            next.push_back(mutate(crossover(a, b, config, rng), config, rng, registry));
        }
    }
    return next;
}

RunResult evolve(const Config& config, const Dataset& dataset, int threads) {
    config.validate();
    if (dataset.size() == 0) throw std::invalid_argument("evolve: dataset is empty");
    if (dataset.u.size() != dataset.t.size())
        throw std::invalid_argument("evolve: dataset u/t lengths differ");

    const auto start = std::chrono::steady_clock::now();
    Rng rng(config.seed);
    InnovationRegistry registry;
    std::vector<Genome> genomes;
    genomes.reserve(config.pop_size);
    for (int i = 0; i < config.pop_size; ++i)
        genomes.push_back(initial_genome(config, rng, registry));

    RunResult result;
    std::vector<Species> species;
    int next_species_id = 1;
    double best_ever = -std::numeric_limits<double>::infinity();

    for (int generation = 0;; ++generation) {
        evaluate_population(genomes, dataset, threads);
        for (const Genome& g : genomes) {
            if (g.fitness.value() > best_ever) {
                best_ever = g.fitness.value();
                result.winner = g;
            }
        }
        species = speciate(genomes, std::move(species), config, next_species_id);

        double mean = 0.0;
        for (const Genome& g : genomes) mean += g.fitness.value();
        mean /= static_cast<double>(genomes.size());
        result.log.push_back({generation, mean, best_ever, static_cast<int>(species.size()),
                              result.winner.du, result.winner.dy,
                              static_cast<int>(result.winner.nodes.size()),
                              static_cast<int>(result.winner.connections.size())});

        if (generation == config.generations) break;

        species = update_stagnation(std::move(species), config, generation);
        if (species.empty()) {
            result.extinction_generations.push_back(generation);
            genomes.clear();
            for (int i = 0; i < config.pop_size; ++i)
                genomes.push_back(initial_genome(config, rng, registry));
            continue;
        }
        genomes = reproduce(species, config, rng, registry);
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

RunResult evolve(const Config& config, const Dataset& dataset) {
    return evolve(config, dataset, thread_count_from_env());
}

}  // namespace tdneat

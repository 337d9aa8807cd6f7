// Acceptance suite: end-to-end checks of the library against independent
// oracles, one PASS/FAIL line per criterion.  Exits nonzero when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "tdneat/experiment.hpp"
#include "tdneat/network.hpp"
#include "tdneat/plant.hpp"
#include "tdneat/population.hpp"
#include "tdneat/variation.hpp"

using namespace tdneat;
namespace fs = std::filesystem;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// ---------------------------------------------------------------------------
// Criterion 1: delay crossover against an independent rounding.
// ---------------------------------------------------------------------------

// Round half away from zero via an explicit fraction comparison; written
// independently of delay_crossover's std::round path.
long long round_half_away(double x) {
    const double base = std::floor(x);
    const double frac = x - base;
    if (frac > 0.5) return static_cast<long long>(base) + 1;
    if (frac < 0.5) return static_cast<long long>(base);
    return x >= 0.0 ? static_cast<long long>(base) + 1 : static_cast<long long>(base);
}

bool criterion1(std::string& detail) {
    const double t0 = now_seconds();
    Rng rng(20240101);
    long violations = 0;
    for (int d1 = 0; d1 <= 20; ++d1) {
        for (int d2 = 0; d2 <= 20; ++d2) {
            for (int rep = 0; rep < 1000; ++rep) {
                const double r = rng.uniform();
                const int got = delay_crossover(d1, d2, r);
                const long long expected = round_half_away(r * d1 + (1.0 - r) * d2);
                if (got != expected) ++violations;
                if (got < std::min(d1, d2) || got > std::max(d1, d2)) ++violations;
            }
        }
    }
    const double elapsed = now_seconds() - t0;
    std::ostringstream os;
    os << "441000 crossovers, " << violations << " violations, " << elapsed << " s";
    detail = os.str();
    return violations == 0 && elapsed < 10.0;
}

// ---------------------------------------------------------------------------
// Criterion 2: delay mutation property suite with the full invariant check.
// ---------------------------------------------------------------------------
bool criterion2(std::string& detail) {
    Config cfg;
    Rng rng(9090);
    InnovationRegistry registry;
    Genome g = initial_genome(cfg, rng, registry);
    long violations = 0;
    const int total = 100000;
    for (int i = 0; i < total; ++i) {
        DelayMutationOutcome outcome;
        const DelaySignal which = (i % 2 == 0) ? DelaySignal::du : DelaySignal::dy;
        g = mutate_delay(g, which, cfg, rng, registry, &outcome);
        if (outcome.delta == 0) ++violations;
        if (outcome.new_delay < 0) ++violations;
        if (outcome.new_delay != std::abs(outcome.old_delay + outcome.delta)) ++violations;
        if (!validate(g).empty()) ++violations;
        if (i % 37 == 0) g = mutate_structure(g, cfg, rng, registry);  // vary the topology
        if (i % 2000 == 1999) g = initial_genome(cfg, rng, registry);  // keep sizes bounded
    }
    std::ostringstream os;
    os << total << " mutations, " << violations << " violations";
    detail = os.str();
    return violations == 0;
}

// ---------------------------------------------------------------------------
// Criterion 3: fitness exactness against an independent MSE.
// ---------------------------------------------------------------------------
bool criterion3(std::string& detail) {
    Rng rng(31337);
    long violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 100));
        std::vector<double> y(n), t(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = rng.uniform_real(-3.0, 3.0);
            t[i] = rng.uniform_real(-3.0, 3.0);
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += (y[i] - t[i]) * (y[i] - t[i]);
        const double expected = -1000.0 * (acc / static_cast<double>(n));
        const double got = fitness(y, t);
        if (std::abs(got - expected) > 1e-12 * std::max(1.0, std::abs(expected))) ++violations;
    }
    const std::vector<double> same{0.25, -0.5, 1.0};
    if (fitness(same, same) != 0.0) ++violations;
    const std::vector<double> y2{0.1, -0.1}, t2{0.0, 0.0};
    if (std::abs(fitness(y2, t2) - (-10.0)) > 1e-12 * 10.0) ++violations;
    std::ostringstream os;
    os << "1000 random triples + anchors, " << violations << " violations";
    detail = os.str();
    return violations == 0;
}

// ---------------------------------------------------------------------------
// Criterion 4: plant simulation against a brute-force recursion.
// ---------------------------------------------------------------------------
std::vector<double> plant_recursion_oracle(const std::vector<double>& u) {
    std::vector<double> x(u.size(), 0.0);
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double x1 = k >= 1 ? x[k - 1] : 0.0;
        const double x5 = k >= 5 ? x[k - 5] : 0.0;
        const double x10 = k >= 10 ? x[k - 10] : 0.0;
        const double u15 = k >= 15 ? u[k - 15] : 0.0;
        x[k] = -0.05 * x1 + 0.02 * x5 + std::sin(x10 / 10.0) + u15;
    }
    return x;
}

bool criterion4(std::string& detail) {
    Rng rng(555);
    long violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> u(200);
        for (double& v : u) v = rng.uniform_real(-2.0, 2.0);
        const auto got = simulate_exemplary(u);
        const auto expected = plant_recursion_oracle(u);
        for (std::size_t k = 0; k < u.size(); ++k)
            if (got[k] != expected[k]) ++violations;
    }
    const std::vector<double> step(40, 1.0);
    const auto response = simulate_exemplary(step);
    for (int k = 0; k < 15; ++k)
        if (response[static_cast<std::size_t>(k)] != 0.0) ++violations;
    if (response[15] != 1.0) ++violations;
    std::ostringstream os;
    os << "1000 random inputs bit-compared + unit step, " << violations << " violations";
    detail = os.str();
    return violations == 0;
}

// ---------------------------------------------------------------------------
// Criterion 5: phenotype evaluation on hand-constructed genomes.
// ---------------------------------------------------------------------------
Genome scaffold(int du, int dy) {
    Genome g;
    g.du = du;
    g.dy = dy;
    g.nodes[kOutputId] = NodeGene{kOutputId, NodeKind::output, 0, 0.0};
    for (int lag = 0; lag <= du; ++lag)
        g.nodes[input_u_id(lag)] = NodeGene{input_u_id(lag), NodeKind::input_u, lag, 0.0};
    for (int lag = 1; lag <= dy; ++lag)
        g.nodes[input_y_id(lag)] = NodeGene{input_y_id(lag), NodeKind::input_y, lag, 0.0};
    return g;
}

void wire(Genome& g, int innovation, int in, int out, double weight, bool enabled = true) {
    g.connections[innovation] = ConnectionGene{innovation, in, out, weight, enabled};
}

bool criterion5(std::string& detail) {
    long violations = 0;
    std::vector<double> u(30);
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = std::sin(0.37 * static_cast<double>(k));

    std::vector<Genome> genomes;

    // 1: zero network.
    Genome zero = scaffold(0, 0);
    zero.nodes[1] = NodeGene{1, NodeKind::hidden, 0, 0.0};
    wire(zero, 1, input_u_id(0), 1, 0.0);
    wire(zero, 2, 1, kOutputId, 0.0);
    genomes.push_back(zero);
    for (double y : CompiledNetwork::compile(zero).simulate_free_run(u))
        if (y != 0.0) ++violations;

    // 2: single tanh path, gain 1 in and out.
    Genome path = scaffold(0, 0);
    path.nodes[1] = NodeGene{1, NodeKind::hidden, 0, 0.0};
    wire(path, 1, input_u_id(0), 1, 1.0);
    wire(path, 2, 1, kOutputId, 1.0);
    genomes.push_back(path);
    {
        const CompiledNetwork net = CompiledNetwork::compile(path);
        if (net.step(std::vector<double>{0.5}, {}) != std::tanh(0.5)) ++violations;
        const auto y = net.simulate_free_run(u);
        for (std::size_t k = 0; k < u.size(); ++k)
            if (y[k] != std::tanh(u[k])) ++violations;
    }

    // 3: one-step self-feedback y(k) = a u(k) + w y(k-1).
    const double a = 0.4, w = 0.9;
    Genome feedback = scaffold(0, 1);
    wire(feedback, 1, input_u_id(0), kOutputId, a);
    wire(feedback, 2, input_y_id(1), kOutputId, w);
    genomes.push_back(feedback);
    {
        const auto y = CompiledNetwork::compile(feedback).simulate_free_run(u);
        double prev = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            const double expected = u[k] * a + prev * w;
            if (y[k] != expected) ++violations;
            prev = expected;
        }
    }

    // 4: two-hidden chain with biases.
    Genome chain = scaffold(0, 0);
    chain.nodes[4] = NodeGene{4, NodeKind::hidden, 0, 0.2};
    chain.nodes[2] = NodeGene{2, NodeKind::hidden, 0, -0.1};
    wire(chain, 1, input_u_id(0), 4, 0.7);
    wire(chain, 2, 4, 2, 1.3);
    wire(chain, 3, 2, kOutputId, 0.8);
    genomes.push_back(chain);
    {
        const auto y = CompiledNetwork::compile(chain).simulate_free_run(u);
        for (std::size_t k = 0; k < u.size(); ++k) {
            const double expected =
                0.8 * std::tanh(-0.1 + 1.3 * std::tanh(0.2 + 0.7 * u[k]));
            if (y[k] != expected) ++violations;
        }
    }

    // 5: a disabled gene behaves as if deleted.
    Genome toggled = scaffold(1, 0);
    toggled.nodes[1] = NodeGene{1, NodeKind::hidden, 0, 0.05};
    wire(toggled, 1, input_u_id(0), 1, 0.6);
    wire(toggled, 2, input_u_id(1), 1, -0.8, false);
    wire(toggled, 3, 1, kOutputId, 1.1);
    genomes.push_back(toggled);
    {
        Genome pruned = toggled;
        pruned.connections.erase(2);
        const auto ya = CompiledNetwork::compile(toggled).simulate_free_run(u);
        const auto yb = CompiledNetwork::compile(pruned).simulate_free_run(u);
        if (ya != yb) ++violations;
    }

    // Serialization round trip leaves every simulation bit-identical.
    for (const Genome& g : genomes) {
        const Genome back = deserialize(serialize(g));
        const auto ya = CompiledNetwork::compile(g).simulate_free_run(u);
        const auto yb = CompiledNetwork::compile(back).simulate_free_run(u);
        if (ya != yb) ++violations;
    }

    std::ostringstream os;
    os << "5 hand-built genomes + round trips, " << violations << " violations";
    detail = os.str();
    return violations == 0;
}

// ---------------------------------------------------------------------------
// Criterion 6: byte-identical runs, independent of TDNEAT_THREADS.
// ---------------------------------------------------------------------------
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool criterion6(std::string& detail) {
    const fs::path dir =
        fs::temp_directory_path() / ("tdneat_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    Config cfg;
    cfg.pop_size = 50;
    cfg.generations = 40;
    cfg.seed = 4242;
    const Dataset data = make_exemplary_dataset({200, 20, -1.0, 1.0, 77}, "determinism");

    ::setenv("TDNEAT_THREADS", "1", 1);
    const RunResult run1 = evolve(cfg, data);
    write_generation_log(run1, (dir / "log1.csv").string());
    write_winner(run1.winner, (dir / "winner1.json").string());

    ::setenv("TDNEAT_THREADS", "4", 1);
    const RunResult run2 = evolve(cfg, data);
    write_generation_log(run2, (dir / "log2.csv").string());
    write_winner(run2.winner, (dir / "winner2.json").string());
    ::unsetenv("TDNEAT_THREADS");

    const bool logs_equal = slurp((dir / "log1.csv").string()) ==
                            slurp((dir / "log2.csv").string());
    const bool winners_equal = slurp((dir / "winner1.json").string()) ==
                               slurp((dir / "winner2.json").string());
    fs::remove_all(dir);
    std::ostringstream os;
    os << "logs " << (logs_equal ? "identical" : "DIFFER") << ", winners "
       << (winners_equal ? "identical" : "DIFFER") << " across 1 vs 4 threads";
    detail = os.str();
    return logs_equal && winners_equal;
}

// ---------------------------------------------------------------------------
// Criterion 7: desk-scale dNEAT learning on the stock dataset.
// ---------------------------------------------------------------------------
bool criterion7(std::string& detail) {
    const Dataset data = exemplary_learning_dataset();
    std::ostringstream os;
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Config cfg;
        cfg.algo = Algo::dneat;
        cfg.generations = 300;
        cfg.seed = seed;
        const RunResult result = evolve(cfg, data, 0);
        const double mse0 = -result.log.front().best_fitness / 1000.0;
        const double mse_final = -result.log.back().best_fitness / 1000.0;
        const double factor = mse0 / mse_final;
        bool monotone = true;
        for (std::size_t i = 1; i < result.log.size(); ++i)
            if (result.log[i].best_fitness < result.log[i - 1].best_fitness) monotone = false;
        if (factor < 5.0 || !monotone) ok = false;
        os << "seed " << seed << ": x" << std::round(factor * 10.0) / 10.0
           << (monotone ? "" : " NON-MONOTONE") << "; ";
    }
    detail = os.str();
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 8: paired NEAT vs dNEAT ordering on the learning set.
// ---------------------------------------------------------------------------
double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool criterion8(std::string& detail) {
    const Dataset data = exemplary_learning_dataset();
    std::vector<double> neat_mse, dneat_mse;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        for (Algo algo : {Algo::neat, Algo::dneat}) {
            Config cfg;
            cfg.algo = algo;
            cfg.generations = 500;
            cfg.seed = seed;
            const RunResult result = evolve(cfg, data, 0);
            const double winner_mse = -result.log.back().best_fitness / 1000.0;
            (algo == Algo::neat ? neat_mse : dneat_mse).push_back(winner_mse);
        }
    }
    const double m_neat = median(neat_mse);
    const double m_dneat = median(dneat_mse);
    std::ostringstream os;
    os << "median winner MSE: dneat " << m_dneat << " vs neat " << m_neat;
    detail = os.str();
    return m_dneat <= m_neat;
}

// ---------------------------------------------------------------------------
// Criterion 9: population mechanics over a 100-generation run.
// ---------------------------------------------------------------------------
std::vector<int> independent_largest_remainder(const std::vector<double>& masses, int total) {
    const std::size_t n = masses.size();
    double sum = 0.0;
    for (double m : masses) sum += m;
    std::vector<double> share(n);
    for (std::size_t i = 0; i < n; ++i)
        share[i] = sum > 0.0 ? total * masses[i] / sum : static_cast<double>(total) / n;
    std::vector<int> quota(n);
    int given = 0;
    for (std::size_t i = 0; i < n; ++i) {
        quota[i] = static_cast<int>(std::floor(share[i]));
        given += quota[i];
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return share[a] - std::floor(share[a]) > share[b] - std::floor(share[b]);
    });
    for (std::size_t i = 0; given < total && i < n; ++i, ++given) ++quota[idx[i]];
    return quota;
}

bool criterion9(std::string& detail) {
    Config cfg;
    cfg.algo = Algo::neat;
    cfg.seed = 31;
    const Dataset data = make_exemplary_dataset({200, 20, -1.0, 1.0, 88}, "mechanics");

    Rng rng(cfg.seed);
    InnovationRegistry registry;
    std::vector<Genome> genomes;
    std::set<std::pair<int, int>> initial_pairs;
    for (int i = 0; i < cfg.pop_size; ++i) {
        genomes.push_back(initial_genome(cfg, rng, registry));
        initial_pairs.insert({genomes.back().du, genomes.back().dy});
    }

    long violations = 0;
    std::vector<Species> species;
    int next_species_id = 1;
    for (int generation = 0; generation < 100; ++generation) {
        evaluate_population(genomes, data, 0);
        species = speciate(genomes, std::move(species), cfg, next_species_id);

        // Partition: nonempty parts covering exactly the population.
        std::size_t covered = 0;
        for (const Species& s : species) {
            if (s.members.empty()) ++violations;
            covered += s.members.size();
        }
        if (covered != genomes.size()) ++violations;

        species = update_stagnation(std::move(species), cfg, generation);
        if (species.empty()) {
            ++violations;  // unreachable with species_elitism > 0
            break;
        }

        // Expected elites from an independent allocation.
        double min_fitness = std::numeric_limits<double>::infinity();
        for (const Species& s : species)
            for (const Genome& m : s.members)
                min_fitness = std::min(min_fitness, m.fitness.value());
        std::vector<double> masses;
        for (const Species& s : species) {
            double mass = 0.0;
            for (const Genome& m : s.members)
                mass += (m.fitness.value() - min_fitness) / s.members.size();
            masses.push_back(mass);
        }
        const std::vector<int> quotas =
            independent_largest_remainder(masses, cfg.pop_size);
        std::vector<Genome> expected_elites;
        for (std::size_t i = 0; i < species.size(); ++i) {
            std::vector<const Genome*> ranked;
            for (const Genome& m : species[i].members) ranked.push_back(&m);
            std::stable_sort(ranked.begin(), ranked.end(),
                             [](const Genome* x, const Genome* y) {
                                 return x->fitness.value() > y->fitness.value();
                             });
            const int elites = std::min(
                {cfg.elitism, static_cast<int>(ranked.size()), quotas[i]});
            for (int e = 0; e < elites; ++e) expected_elites.push_back(*ranked[e]);
        }

        genomes = reproduce(species, cfg, rng, registry);

        if (static_cast<int>(genomes.size()) != cfg.pop_size) ++violations;
        for (const Genome& elite : expected_elites) {
            const bool present =
                std::any_of(genomes.begin(), genomes.end(), [&](const Genome& g) {
                    return g.fitness == elite.fitness && structurally_equal(g, elite);
                });
            if (!present) ++violations;
        }
        for (const Genome& g : genomes)
            if (initial_pairs.count({g.du, g.dy}) == 0) ++violations;
    }
    std::ostringstream os;
    os << "100 generations, " << violations << " violations";
    detail = os.str();
    return violations == 0;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool(std::string&)> run;
    };
    const std::vector<Criterion> criteria{
        {"1 delay-crossover oracle", criterion1},
        {"2 delay-mutation property suite", criterion2},
        {"3 fitness exactness", criterion3},
        {"4 plant recursion oracle", criterion4},
        {"5 phenotype scalar oracles", criterion5},
        {"6 determinism across thread counts", criterion6},
        {"7 desk-scale dNEAT learning", criterion7},
        {"8 NEAT vs dNEAT ordering", criterion8},
        {"9 population mechanics", criterion9},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        bool pass = false;
        const double t0 = now_seconds();
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed = now_seconds() - t0;
        std::printf("%s  criterion %s (%.1fs): %s\n", pass ? "PASS" : "FAIL", c.name, elapsed,
                    detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    return failures;
}

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdneat/config.hpp"
#include "tdneat/rng.hpp"

namespace tdneat {

enum class NodeKind { input_u, input_y, hidden, output };

// Node ids follow a fixed scheme shared by every genome in a run, so the same
// (signal, lag) input is the same structural endpoint in all of them:
//   output         ->  0
//   u-lag-i input  ->  -(2*i + 1)        (i in [0, du])
//   y-lag-j input  ->  -(2*j)            (j in [1, dy])
//   hidden         ->  positive ids handed out by the InnovationRegistry
constexpr int kOutputId = 0;
constexpr int input_u_id(int lag) { return -(2 * lag + 1); }
constexpr int input_y_id(int lag) { return -(2 * lag); }

struct NodeGene {
    int id = 0;
    NodeKind kind = NodeKind::hidden;
    int lag = 0;        // meaningful for input nodes only
    double bias = 0.0;  // hidden nodes only; inputs and the output carry none
};

struct ConnectionGene {
    int innovation = 0;
    int in_node = 0;
    int out_node = 0;
    double weight = 0.0;
    bool enabled = true;
};

// The evolvable unit: a NARX-style network genotype.  Immutable by
// convention once built; variation operators return fresh values.
struct Genome {
    std::map<int, NodeGene> nodes;              // keyed by node id
    std::map<int, ConnectionGene> connections;  // keyed by innovation number
    int du = 0;  // input delay level: u lags 0..du
    int dy = 0;  // output (recurrence) delay level: y lags 1..dy
    std::optional<double> fitness;

    bool has_node(int id) const { return nodes.count(id) != 0; }
    int input_count() const { return du + 1 + dy; }
    std::vector<int> hidden_ids() const;                         // ascending
    const ConnectionGene* find_connection(int in, int out) const;
};

// Structural and parametric equality; fitness is ignored.
bool structurally_equal(const Genome& a, const Genome& b);

// Hands out innovation numbers for structural (in, out) pairs and ids for
// hidden nodes.  The same pair (and the same connection split) always maps to
// the same number within one evolutionary run.  Mutated only during the
// single-threaded reproduction phase.
class InnovationRegistry {
public:
    // Every initial genome shares this hidden node, so the initial
    // population's connection genes align across individuals.
    static constexpr int kInitialHiddenId = 1;

    int connection_innovation(int in_node, int out_node);

    // Hidden node id used when splitting the connection with the given
    // innovation number; stable across genomes and generations.
    int hidden_id_for_split(int split_innovation);

    // A never-before-seen hidden id (used when the split id already exists
    // in the genome being mutated).
    int fresh_hidden_id() { return next_hidden_id_++; }

private:
    std::map<std::pair<int, int>, int> innovations_;
    std::map<int, int> split_hidden_;
    int next_innovation_ = 1;
    int next_hidden_id_ = kInitialHiddenId + 1;
};

// Fully connected 1-hidden-node starting genome.  Draw order on `rng`:
// du, dy (uniform ints), hidden bias (gaussian), then connection weights for
// u-lag-0..du, y-lag-1..dy, and hidden->output, each gaussian.
Genome initial_genome(const Config& config, Rng& rng, InnovationRegistry& registry);

// Classical gene-alignment distance over connection genes:
//   disjoint_coefficient * (#disjoint + #excess) / max(1, larger gene count)
//   + weight_coefficient * mean |weight difference| over matching genes.
// Delay genes do not enter the distance.
double compatibility_distance(const Genome& a, const Genome& b, const Config& config);

// Returns every violated genome invariant as a human-readable string;
// empty means the genome is valid.
std::vector<std::string> validate(const Genome& g);

bool enabled_graph_is_acyclic(const Genome& g);

// Structured-text (JSON) genome files.
std::string serialize(const Genome& g);
Genome deserialize(const std::string& text);  // throws std::runtime_error with a diagnostic
void save_genome(const Genome& g, const std::string& path);
Genome load_genome(const std::string& path);

}  // namespace tdneat

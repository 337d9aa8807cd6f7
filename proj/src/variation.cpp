#include "tdneat/variation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace tdneat {

namespace {

// BFS over enabled connections.
bool path_exists(const std::map<int, std::vector<int>>& out_edges, int from, int to) {
    if (from == to) return true;
    std::set<int> visited{from};
    std::vector<int> stack{from};
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        auto it = out_edges.find(cur);
        if (it == out_edges.end()) continue;
        for (int succ : it->second) {
            if (succ == to) return true;
            if (visited.insert(succ).second) stack.push_back(succ);
        }
    }
    return false;
}

std::map<int, std::vector<int>> enabled_adjacency(const Genome& g) {
    std::map<int, std::vector<int>> adj;
    for (const auto& [innov, c] : g.connections)
        if (c.enabled) adj[c.in_node].push_back(c.out_node);
    return adj;
}

// Adding edge in->out keeps the enabled graph acyclic iff out cannot reach in.
bool addition_keeps_acyclic(const Genome& g, int in, int out) {
    return !path_exists(enabled_adjacency(g), out, in);
}

void rebuild_inputs_for_delays(Genome& g) {
    // Drop input nodes outside the delay ranges, make sure every in-range lag
    // has its node, then drop connections left without both endpoints (this
    // also covers inherited genes that referenced lags the child never had).
    std::vector<int> drop;
    for (const auto& [id, node] : g.nodes) {
        if (node.kind == NodeKind::input_u && node.lag > g.du) drop.push_back(id);
        if (node.kind == NodeKind::input_y && (node.lag < 1 || node.lag > g.dy))
            drop.push_back(id);
    }
    for (int id : drop) g.nodes.erase(id);
    for (int lag = 0; lag <= g.du; ++lag) {
        const int id = input_u_id(lag);
        if (!g.has_node(id)) g.nodes[id] = NodeGene{id, NodeKind::input_u, lag, 0.0};
    }
    for (int lag = 1; lag <= g.dy; ++lag) {
        const int id = input_y_id(lag);
        if (!g.has_node(id)) g.nodes[id] = NodeGene{id, NodeKind::input_y, lag, 0.0};
    }
    for (auto it = g.connections.begin(); it != g.connections.end();) {
        if (!g.has_node(it->second.in_node) || !g.has_node(it->second.out_node))
            it = g.connections.erase(it);
        else
            ++it;
    }
}

}  // namespace

int delay_crossover(int d1, int d2, double r) {
    return static_cast<int>(std::round(r * d1 + (1.0 - r) * d2));
}

Genome crossover(const Genome& parent1, const Genome& parent2, const Config& config, Rng& rng) {
    if (!parent1.fitness || !parent2.fitness)
        throw std::invalid_argument("crossover: both parents must have evaluated fitness");
    const double f1 = *parent1.fitness;
    const double f2 = *parent2.fitness;
    const bool tie = (f1 == f2);
    const bool primary_is_1 = tie ? rng.bernoulli(0.5) : (f1 > f2);
    const Genome& primary = primary_is_1 ? parent1 : parent2;
    const Genome& secondary = primary_is_1 ? parent2 : parent1;

    Genome child;
    if (config.algo == Algo::dneat) {
        child.du = delay_crossover(parent1.du, parent2.du, rng.uniform());
        child.dy = delay_crossover(parent1.dy, parent2.dy, rng.uniform());
    } else {
        child.du = primary.du;
        child.dy = primary.dy;
    }

    // Gene alignment by innovation number.  The registry guarantees one
    // innovation per (in, out) pair, so matching genes agree on topology.
    // Single-parent genes keep their flag verbatim and matching genes with
    // agreeing flags copy them, so crossing a genome with itself reproduces
    // it exactly; the disabled_inherit_prob roll covers disagreeing flags.
    auto ip = primary.connections.begin();
    auto is = secondary.connections.begin();
    while (ip != primary.connections.end() || is != secondary.connections.end()) {
        if (is == secondary.connections.end() ||
            (ip != primary.connections.end() && ip->first < is->first)) {
            // primary-only gene: always inherited (primary is the fitter
            // parent, or the coin-picked one on a tie)
            if (tie && !rng.bernoulli(0.5)) {
                ++ip;
                continue;
            }
            child.connections[ip->first] = ip->second;
            ++ip;
        } else if (ip == primary.connections.end() || is->first < ip->first) {
            // secondary-only gene: kept only on a fitness tie, coin per gene
            if (tie && rng.bernoulli(0.5)) child.connections[is->first] = is->second;
            ++is;
        } else {
            ConnectionGene gene = ip->second;
            gene.weight = rng.bernoulli(0.5) ? ip->second.weight : is->second.weight;
            if (ip->second.enabled != is->second.enabled)
                gene.enabled = !rng.bernoulli(config.disabled_inherit_prob);
            child.connections[gene.innovation] = gene;
            ++ip;
            ++is;
        }
    }

    // Hidden nodes: the primary parent's set plus any referenced by inherited
    // genes; matching biases come from a random parent.
    child.nodes[kOutputId] = NodeGene{kOutputId, NodeKind::output, 0, 0.0};
    std::set<int> hidden_needed;
    for (const auto& [id, node] : primary.nodes)
        if (node.kind == NodeKind::hidden) hidden_needed.insert(id);
    for (const auto& [innov, c] : child.connections) {
        for (int end : {c.in_node, c.out_node}) {
            if (end > 0) hidden_needed.insert(end);
        }
    }
    for (int id : hidden_needed) {
        auto it1 = primary.nodes.find(id);
        auto it2 = secondary.nodes.find(id);
        if (it1 != primary.nodes.end() && it2 != secondary.nodes.end()) {
            NodeGene node = it1->second;
            node.bias = rng.bernoulli(0.5) ? it1->second.bias : it2->second.bias;
            child.nodes[id] = node;
        } else if (it1 != primary.nodes.end()) {
            child.nodes[id] = it1->second;
        } else {
            child.nodes[id] = it2->second;
        }
    }

    rebuild_inputs_for_delays(child);

    // A tie can merge topology from both parents, which may close a cycle;
    // disable offending genes in innovation order.
    if (!enabled_graph_is_acyclic(child)) {
        std::map<int, std::vector<int>> adj;
        for (auto& [innov, gene] : child.connections) {
            if (!gene.enabled) continue;
            if (path_exists(adj, gene.out_node, gene.in_node))
                gene.enabled = false;
            else
                adj[gene.in_node].push_back(gene.out_node);
        }
    }
    return child;
}

Genome mutate_delay(const Genome& g, DelaySignal which, const Config& config, Rng& rng,
                    InnovationRegistry& registry, DelayMutationOutcome* outcome) {
    const bool is_du = (which == DelaySignal::du);
    const double power = is_du ? config.du_mutate_power : config.dy_mutate_power;
    const int old_delay = is_du ? g.du : g.dy;

    int delta = static_cast<int>(std::round(rng.uniform_real(-power, power)));
    if (delta == 0) delta = rng.bernoulli(0.5) ? 1 : -1;
    const int new_delay = std::abs(old_delay + delta);

    DelayMutationOutcome record;
    record.old_delay = old_delay;
    record.delta = delta;
    record.new_delay = new_delay;

    Genome out = g;
    out.fitness.reset();
    const NodeKind kind = is_du ? NodeKind::input_u : NodeKind::input_y;
    auto id_for_lag = [&](int lag) { return is_du ? input_u_id(lag) : input_y_id(lag); };
    const int min_lag = is_du ? 0 : 1;

    if (new_delay < old_delay) {
        for (int lag = std::max(min_lag, new_delay + 1); lag <= old_delay; ++lag) {
            const int id = id_for_lag(lag);
            for (auto it = out.connections.begin(); it != out.connections.end();) {
                if (it->second.in_node == id) {
                    record.removed.push_back(it->second);
                    it = out.connections.erase(it);
                } else {
                    ++it;
                }
            }
            out.nodes.erase(id);
        }
    } else if (new_delay > old_delay) {
        const std::vector<int> hidden = out.hidden_ids();
        for (int lag = std::max(min_lag, old_delay + 1); lag <= new_delay; ++lag) {
            const int id = id_for_lag(lag);
            out.nodes[id] = NodeGene{id, kind, lag, 0.0};
            for (int h : hidden) {
                const int innov = registry.connection_innovation(id, h);
                ConnectionGene gene{innov, id, h,
                                    rng.gaussian(config.weight_init_mean,
                                                 config.weight_init_stdev),
                                    true};
                out.connections[innov] = gene;
                record.added.push_back(gene);
            }
        }
    }
    if (is_du)
        out.du = new_delay;
    else
        out.dy = new_delay;

    if (outcome) *outcome = std::move(record);
    return out;
}

namespace {

void mutate_add_node(Genome& g, const Config& config, Rng& rng, InnovationRegistry& registry) {
    std::vector<int> enabled;
    for (const auto& [innov, c] : g.connections)
        if (c.enabled) enabled.push_back(innov);
    if (enabled.empty()) return;
    const int innov = enabled[rng.uniform_int(0, static_cast<int>(enabled.size()) - 1)];
    ConnectionGene& split = g.connections.at(innov);
    split.enabled = false;

    int node_id = registry.hidden_id_for_split(innov);
    if (g.has_node(node_id)) node_id = registry.fresh_hidden_id();
    g.nodes[node_id] = NodeGene{node_id, NodeKind::hidden, 0,
                                rng.gaussian(config.bias_init_mean, config.bias_init_stdev)};

    const int in_innov = registry.connection_innovation(split.in_node, node_id);
    g.connections[in_innov] = ConnectionGene{in_innov, split.in_node, node_id, 1.0, true};
    const int out_innov = registry.connection_innovation(node_id, split.out_node);
    g.connections[out_innov] =
        ConnectionGene{out_innov, node_id, split.out_node, split.weight, true};
}

void mutate_delete_node(Genome& g, Rng& rng) {
    const std::vector<int> hidden = g.hidden_ids();
    if (hidden.empty()) return;
    const int id = hidden[rng.uniform_int(0, static_cast<int>(hidden.size()) - 1)];
    g.nodes.erase(id);
    for (auto it = g.connections.begin(); it != g.connections.end();) {
        if (it->second.in_node == id || it->second.out_node == id)
            it = g.connections.erase(it);
        else
            ++it;
    }
}

void mutate_add_connection(Genome& g, const Config& config, Rng& rng,
                           InnovationRegistry& registry) {
    std::set<std::pair<int, int>> taken;
    for (const auto& [innov, c] : g.connections) taken.insert({c.in_node, c.out_node});

    const auto adj = enabled_adjacency(g);
    std::vector<std::pair<int, int>> candidates;
    for (const auto& [in_id, in_node] : g.nodes) {
        if (in_node.kind == NodeKind::output) continue;
        for (const auto& [out_id, out_node] : g.nodes) {
            if (out_node.kind != NodeKind::hidden && out_node.kind != NodeKind::output) continue;
            if (in_id == out_id) continue;
            if (taken.count({in_id, out_id})) continue;
            if (path_exists(adj, out_id, in_id)) continue;  // would close a cycle
            candidates.emplace_back(in_id, out_id);
        }
    }
    if (candidates.empty()) return;
    const auto [in_id, out_id] =
        candidates[rng.uniform_int(0, static_cast<int>(candidates.size()) - 1)];
    const int innov = registry.connection_innovation(in_id, out_id);
    g.connections[innov] =
        ConnectionGene{innov, in_id, out_id,
                       rng.gaussian(config.weight_init_mean, config.weight_init_stdev), true};
}

void mutate_delete_connection(Genome& g, Rng& rng) {
    if (g.connections.empty()) return;
    std::vector<int> innovs;
    for (const auto& [innov, c] : g.connections) innovs.push_back(innov);
    g.connections.erase(innovs[rng.uniform_int(0, static_cast<int>(innovs.size()) - 1)]);
}

void mutate_toggle_enabled(Genome& g, Rng& rng) {
    if (g.connections.empty()) return;
    std::vector<int> innovs;
    for (const auto& [innov, c] : g.connections) innovs.push_back(innov);
    ConnectionGene& gene =
        g.connections.at(innovs[rng.uniform_int(0, static_cast<int>(innovs.size()) - 1)]);
    if (gene.enabled) {
        gene.enabled = false;
    } else {
        // Re-enabling must not close a cycle; otherwise leave it off.
        if (addition_keeps_acyclic(g, gene.in_node, gene.out_node)) gene.enabled = true;
    }
}

}  // namespace

Genome mutate_structure(const Genome& g, const Config& config, Rng& rng,
                        InnovationRegistry& registry) {
    Genome out = g;
    out.fitness.reset();
    if (rng.bernoulli(config.node_add_prob)) mutate_add_node(out, config, rng, registry);
    if (rng.bernoulli(config.node_delete_prob)) mutate_delete_node(out, rng);
    if (rng.bernoulli(config.conn_add_prob)) mutate_add_connection(out, config, rng, registry);
    if (rng.bernoulli(config.conn_delete_prob)) mutate_delete_connection(out, rng);
    if (rng.bernoulli(config.enabled_mutate_rate)) mutate_toggle_enabled(out, rng);
    return out;
}

Genome mutate_weights_biases(const Genome& g, const Config& config, Rng& rng) {
    Genome out = g;
    out.fitness.reset();
    for (auto& [innov, gene] : out.connections) {
        double value = gene.weight;
        if (rng.bernoulli(config.weight_mutate_rate))
            value = gene.weight + rng.gaussian(0.0, config.weight_mutate_power);
        if (rng.bernoulli(config.weight_replace_rate))
            value = rng.gaussian(config.weight_init_mean, config.weight_init_stdev);
        gene.weight = value;
    }
    for (auto& [id, node] : out.nodes) {
        if (node.kind != NodeKind::hidden) continue;
        double value = node.bias;
        if (rng.bernoulli(config.bias_mutate_rate))
            value = node.bias + rng.gaussian(0.0, config.bias_mutate_power);
        if (rng.bernoulli(config.bias_replace_rate))
            value = rng.gaussian(config.bias_init_mean, config.bias_init_stdev);
        node.bias = value;
    }
    return out;
}

Genome mutate(const Genome& g, const Config& config, Rng& rng, InnovationRegistry& registry) {
    Genome out = g;
    if (config.algo == Algo::dneat) {
        if (rng.bernoulli(config.du_mutate_rate))
            out = mutate_delay(out, DelaySignal::du, config, rng, registry);
        if (rng.bernoulli(config.dy_mutate_rate))
            out = mutate_delay(out, DelaySignal::dy, config, rng, registry);
    }
    out = mutate_structure(out, config, rng, registry);
    out = mutate_weights_biases(out, config, rng);
    return out;
}

}  // namespace tdneat

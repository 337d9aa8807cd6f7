#include "tdneat/genome.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tdneat {

std::vector<int> Genome::hidden_ids() const {
    std::vector<int> ids;
    for (const auto& [id, node] : nodes)
        if (node.kind == NodeKind::hidden) ids.push_back(id);
    return ids;
}

const ConnectionGene* Genome::find_connection(int in, int out) const {
    for (const auto& [innov, gene] : connections)
        if (gene.in_node == in && gene.out_node == out) return &gene;
    return nullptr;
}

bool structurally_equal(const Genome& a, const Genome& b) {
    if (a.du != b.du || a.dy != b.dy) return false;
    if (a.nodes.size() != b.nodes.size() || a.connections.size() != b.connections.size())
        return false;
    for (const auto& [id, na] : a.nodes) {
        auto it = b.nodes.find(id);
        if (it == b.nodes.end()) return false;
        const NodeGene& nb = it->second;
        if (na.kind != nb.kind || na.lag != nb.lag || na.bias != nb.bias) return false;
    }
    for (const auto& [innov, ca] : a.connections) {
        auto it = b.connections.find(innov);
        if (it == b.connections.end()) return false;
        const ConnectionGene& cb = it->second;
        if (ca.in_node != cb.in_node || ca.out_node != cb.out_node ||
            ca.weight != cb.weight || ca.enabled != cb.enabled)
            return false;
    }
    return true;
}

int InnovationRegistry::connection_innovation(int in_node, int out_node) {
    auto [it, inserted] = innovations_.try_emplace({in_node, out_node}, next_innovation_);
    if (inserted) ++next_innovation_;
    return it->second;
}

int InnovationRegistry::hidden_id_for_split(int split_innovation) {
    auto [it, inserted] = split_hidden_.try_emplace(split_innovation, next_hidden_id_);
    if (inserted) ++next_hidden_id_;
    return it->second;
}

Genome initial_genome(const Config& config, Rng& rng, InnovationRegistry& registry) {
    Genome g;
    g.du = rng.uniform_int(0, config.du_init_max);
    g.dy = rng.uniform_int(0, config.dy_init_max);

    g.nodes[kOutputId] = NodeGene{kOutputId, NodeKind::output, 0, 0.0};
    const int hidden = InnovationRegistry::kInitialHiddenId;
    g.nodes[hidden] = NodeGene{hidden, NodeKind::hidden, 0,
                               rng.gaussian(config.bias_init_mean, config.bias_init_stdev)};

    auto connect = [&](int in) {
        const int innov = registry.connection_innovation(in, hidden);
        g.connections[innov] = ConnectionGene{
            innov, in, hidden, rng.gaussian(config.weight_init_mean, config.weight_init_stdev),
            true};
    };
    for (int lag = 0; lag <= g.du; ++lag) {
        const int id = input_u_id(lag);
        g.nodes[id] = NodeGene{id, NodeKind::input_u, lag, 0.0};
        connect(id);
    }
    for (int lag = 1; lag <= g.dy; ++lag) {
        const int id = input_y_id(lag);
        g.nodes[id] = NodeGene{id, NodeKind::input_y, lag, 0.0};
        connect(id);
    }
    const int out_innov = registry.connection_innovation(hidden, kOutputId);
    g.connections[out_innov] = ConnectionGene{
        out_innov, hidden, kOutputId,
        rng.gaussian(config.weight_init_mean, config.weight_init_stdev), true};
    return g;
}

double compatibility_distance(const Genome& a, const Genome& b, const Config& config) {
    const std::size_t larger = std::max(a.connections.size(), b.connections.size());
    std::size_t matching = 0;
    std::size_t mismatched = 0;  // disjoint + excess, treated alike
    double weight_diff = 0.0;

    auto ia = a.connections.begin();
    auto ib = b.connections.begin();
    while (ia != a.connections.end() || ib != b.connections.end()) {
        if (ib == b.connections.end() || (ia != a.connections.end() && ia->first < ib->first)) {
            ++mismatched;
            ++ia;
        } else if (ia == a.connections.end() || ib->first < ia->first) {
            ++mismatched;
            ++ib;
        } else {
            ++matching;
            weight_diff += std::abs(ia->second.weight - ib->second.weight);
            ++ia;
            ++ib;
        }
    }

    double d = config.disjoint_coefficient * static_cast<double>(mismatched) /
               static_cast<double>(std::max<std::size_t>(1, larger));
    if (matching > 0)
        d += config.weight_coefficient * (weight_diff / static_cast<double>(matching));
    return d;
}

bool enabled_graph_is_acyclic(const Genome& g) {
    // Kahn over enabled connections; only hidden->hidden edges can form cycles
    // but the full graph is checked for uniformity.
    std::map<int, int> indegree;
    std::map<int, std::vector<int>> out_edges;
    for (const auto& [id, node] : g.nodes) indegree[id] = 0;
    for (const auto& [innov, c] : g.connections) {
        if (!c.enabled) continue;
        if (!g.has_node(c.in_node) || !g.has_node(c.out_node)) return false;
        ++indegree[c.out_node];
        out_edges[c.in_node].push_back(c.out_node);
    }
    std::set<int> ready;
    for (const auto& [id, deg] : indegree)
        if (deg == 0) ready.insert(id);
    std::size_t seen = 0;
    while (!ready.empty()) {
        const int id = *ready.begin();
        ready.erase(ready.begin());
        ++seen;
        for (int succ : out_edges[id])
            if (--indegree[succ] == 0) ready.insert(succ);
    }
    return seen == g.nodes.size();
}

std::vector<std::string> validate(const Genome& g) {
    std::vector<std::string> errs;
    auto fail = [&](const std::string& m) { errs.push_back(m); };

    if (g.du < 0) fail("du is negative");
    if (g.dy < 0) fail("dy is negative");

    int outputs = 0;
    std::set<int> u_lags, y_lags;
    for (const auto& [id, node] : g.nodes) {
        if (node.id != id) fail("node map key does not match node id " + std::to_string(id));
        switch (node.kind) {
            case NodeKind::output:
                ++outputs;
                if (id != kOutputId) fail("output node id must be 0");
                if (node.bias != 0.0) fail("output node carries a bias");
                break;
            case NodeKind::input_u:
                if (node.lag < 0 || node.lag > g.du)
                    fail("input-u lag " + std::to_string(node.lag) + " outside [0, du]");
                if (id != input_u_id(node.lag))
                    fail("input-u node id does not match its lag");
                if (node.bias != 0.0) fail("input node carries a bias");
                if (!u_lags.insert(node.lag).second) fail("duplicate input-u lag");
                break;
            case NodeKind::input_y:
                if (node.lag < 1 || node.lag > g.dy)
                    fail("input-y lag " + std::to_string(node.lag) + " outside [1, dy]");
                if (id != input_y_id(node.lag))
                    fail("input-y node id does not match its lag");
                if (node.bias != 0.0) fail("input node carries a bias");
                if (!y_lags.insert(node.lag).second) fail("duplicate input-y lag");
                break;
            case NodeKind::hidden:
                if (id <= 0) fail("hidden node id must be positive");
                if (!std::isfinite(node.bias)) fail("non-finite bias");
                break;
        }
    }
    if (outputs != 1) fail("genome must have exactly one output node");
    if (static_cast<int>(u_lags.size()) != g.du + 1)
        fail("input-u nodes must cover lags 0..du exactly");
    if (static_cast<int>(y_lags.size()) != g.dy)
        fail("input-y nodes must cover lags 1..dy exactly");

    std::set<std::pair<int, int>> pairs;
    for (const auto& [innov, c] : g.connections) {
        if (c.innovation != innov)
            fail("connection map key does not match innovation " + std::to_string(innov));
        if (!g.has_node(c.in_node))
            fail("connection " + std::to_string(innov) + " references missing node " +
                 std::to_string(c.in_node));
        if (!g.has_node(c.out_node))
            fail("connection " + std::to_string(innov) + " references missing node " +
                 std::to_string(c.out_node));
        if (c.in_node == kOutputId) fail("connection out of the output node");
        if (g.has_node(c.out_node)) {
            const NodeKind k = g.nodes.at(c.out_node).kind;
            if (k == NodeKind::input_u || k == NodeKind::input_y)
                fail("connection into an input node");
        }
        if (!pairs.insert({c.in_node, c.out_node}).second)
            fail("duplicate connection for node pair (" + std::to_string(c.in_node) + ", " +
                 std::to_string(c.out_node) + ")");
        if (!std::isfinite(c.weight)) fail("non-finite weight");
    }

    if (errs.empty() && !enabled_graph_is_acyclic(g))
        fail("enabled-connection graph contains a cycle");
    return errs;
}

namespace {

const char* kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::input_u: return "input_u";
        case NodeKind::input_y: return "input_y";
        case NodeKind::hidden: return "hidden";
        case NodeKind::output: return "output";
    }
    return "?";
}

NodeKind kind_from_name(const std::string& s) {
    if (s == "input_u") return NodeKind::input_u;
    if (s == "input_y") return NodeKind::input_y;
    if (s == "hidden") return NodeKind::hidden;
    if (s == "output") return NodeKind::output;
    throw std::runtime_error("genome: unknown node kind '" + s + "'");
}

}  // namespace

std::string serialize(const Genome& g) {
    nlohmann::ordered_json j;
    j["format"] = "tdneat-genome";
    j["version"] = 1;
    j["du"] = g.du;
    j["dy"] = g.dy;
    if (g.fitness) j["fitness"] = *g.fitness;
    auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& [id, n] : g.nodes) {
        nodes.push_back({{"id", n.id},
                         {"kind", kind_name(n.kind)},
                         {"lag", n.lag},
                         {"bias", n.bias}});
    }
    auto& conns = j["connections"] = nlohmann::ordered_json::array();
    for (const auto& [innov, c] : g.connections) {
        conns.push_back({{"innovation", c.innovation},
                         {"in", c.in_node},
                         {"out", c.out_node},
                         {"weight", c.weight},
                         {"enabled", c.enabled}});
    }
    return j.dump(2) + "\n";
}

Genome deserialize(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("genome: malformed text: ") + e.what());
    }
    Genome g;
    try {
        if (j.value("format", "") != "tdneat-genome")
            throw std::runtime_error("genome: missing or unknown format marker");
        g.du = j.at("du").get<int>();
        g.dy = j.at("dy").get<int>();
        if (j.contains("fitness")) g.fitness = j.at("fitness").get<double>();
        for (const auto& n : j.at("nodes")) {
            NodeGene node;
            node.id = n.at("id").get<int>();
            node.kind = kind_from_name(n.at("kind").get<std::string>());
            node.lag = n.value("lag", 0);
            node.bias = n.value("bias", 0.0);
            if (!g.nodes.emplace(node.id, node).second)
                throw std::runtime_error("genome: duplicate node id " + std::to_string(node.id));
        }
        for (const auto& c : j.at("connections")) {
            ConnectionGene gene;
            gene.innovation = c.at("innovation").get<int>();
            gene.in_node = c.at("in").get<int>();
            gene.out_node = c.at("out").get<int>();
            gene.weight = c.at("weight").get<double>();
            gene.enabled = c.at("enabled").get<bool>();
            if (!g.connections.emplace(gene.innovation, gene).second)
                throw std::runtime_error("genome: duplicate innovation number " +
                                         std::to_string(gene.innovation));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("genome: malformed text: ") + e.what());
    }
    if (auto errs = validate(g); !errs.empty())
        throw std::runtime_error("genome: " + errs.front());
    return g;
}

void save_genome(const Genome& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write genome file '" + path + "'");
    out << serialize(g);
    if (!out) throw std::runtime_error("error while writing genome file '" + path + "'");
}

Genome load_genome(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open genome file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

}  // namespace tdneat

#include "tdneat/network.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace tdneat {

DelayBuffer::DelayBuffer(int du, int dy)
    : u_(static_cast<std::size_t>(du) + 1, 0.0), y_(static_cast<std::size_t>(dy), 0.0) {
    u_pos_ = u_.size() - 1;
    y_pos_ = y_.empty() ? 0 : y_.size() - 1;
}

void DelayBuffer::push_u(double u) {
    u_pos_ = (u_pos_ + 1) % u_.size();
    u_[u_pos_] = u;
}

void DelayBuffer::push_y(double y) {
    if (y_.empty()) return;
    y_pos_ = (y_pos_ + 1) % y_.size();
    y_[y_pos_] = y;
}

double DelayBuffer::u_lag(int i) const {
    const std::size_t n = u_.size();
    return u_[(u_pos_ + n - static_cast<std::size_t>(i)) % n];
}

double DelayBuffer::y_lag(int j) const {
    const std::size_t n = y_.size();
    return y_[(y_pos_ + n - static_cast<std::size_t>(j - 1)) % n];
}

CompiledNetwork CompiledNetwork::compile(const Genome& g) {
    CompiledNetwork net;
    net.du_ = g.du;
    net.dy_ = g.dy;

    // Slot layout: u lags 0..du, y lags 1..dy, hidden nodes in topological
    // order, output last.
    std::map<int, int> slot;
    int next = 0;
    for (int lag = 0; lag <= g.du; ++lag) slot[input_u_id(lag)] = next++;
    for (int lag = 1; lag <= g.dy; ++lag) slot[input_y_id(lag)] = next++;

    // Kahn's algorithm over enabled hidden->hidden edges, smallest id first,
    // gives a deterministic evaluation order.
    const std::vector<int> hidden = g.hidden_ids();
    std::map<int, int> indegree;
    std::map<int, std::vector<int>> successors;
    for (int id : hidden) indegree[id] = 0;
    for (const auto& [innov, c] : g.connections) {
        if (!c.enabled) continue;
        if (c.in_node > 0 && c.out_node > 0) {
            ++indegree[c.out_node];
            successors[c.in_node].push_back(c.out_node);
        }
    }
    std::set<int> ready;
    for (const auto& [id, deg] : indegree)
        if (deg == 0) ready.insert(id);
    std::vector<int> order;
    while (!ready.empty()) {
        const int id = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(id);
        for (int succ : successors[id])
            if (--indegree[succ] == 0) ready.insert(succ);
    }
    if (order.size() != hidden.size())
        throw std::runtime_error("compile: enabled-connection graph contains a cycle");

    for (int id : order) slot[id] = next++;
    slot[kOutputId] = next++;

    net.units_.resize(order.size() + 1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        net.units_[i].is_output = false;
        net.units_[i].bias = g.nodes.at(order[i]).bias;
    }
    net.units_.back().is_output = true;
    net.units_.back().bias = 0.0;

    const int first_unit_slot = g.input_count();
    for (const auto& [innov, c] : g.connections) {
        if (!c.enabled) continue;
        Unit& unit = net.units_[static_cast<std::size_t>(slot.at(c.out_node) - first_unit_slot)];
        unit.incoming.push_back({slot.at(c.in_node), c.weight});
    }
    return net;
}

double CompiledNetwork::step_into(std::span<const double> u_inputs,
                                  std::span<const double> y_inputs,
                                  std::vector<double>& values) const {
    values.resize(static_cast<std::size_t>(du_) + 1 + static_cast<std::size_t>(dy_) +
                  units_.size());
    std::size_t pos = 0;
    for (double v : u_inputs) values[pos++] = v;
    for (double v : y_inputs) values[pos++] = v;
    for (const Unit& unit : units_) {
        double sum = unit.is_output ? 0.0 : unit.bias;
        for (const Incoming& in : unit.incoming) sum += values[static_cast<std::size_t>(in.source_slot)] * in.weight;
        values[pos++] = unit.is_output ? sum : std::tanh(sum);
    }
    return values[pos - 1];
}

double CompiledNetwork::step(std::span<const double> u_inputs,
                             std::span<const double> y_inputs) const {
    if (u_inputs.size() != static_cast<std::size_t>(du_) + 1)
        throw std::invalid_argument("step: expected du + 1 input-u values");
    if (y_inputs.size() != static_cast<std::size_t>(dy_))
        throw std::invalid_argument("step: expected dy input-y values");
    std::vector<double> scratch;
    return step_into(u_inputs, y_inputs, scratch);
}

std::vector<double> CompiledNetwork::simulate_free_run(std::span<const double> u) const {
    std::vector<double> out(u.size());
    DelayBuffer buffer(du_, dy_);
    std::vector<double> u_in(static_cast<std::size_t>(du_) + 1);
    std::vector<double> y_in(static_cast<std::size_t>(dy_));
    std::vector<double> scratch;
    for (std::size_t k = 0; k < u.size(); ++k) {
        buffer.push_u(u[k]);
        for (int i = 0; i <= du_; ++i) u_in[static_cast<std::size_t>(i)] = buffer.u_lag(i);
        for (int j = 1; j <= dy_; ++j) y_in[static_cast<std::size_t>(j - 1)] = buffer.y_lag(j);
        const double y = step_into(u_in, y_in, scratch);
        out[k] = y;
        buffer.push_y(y);
    }
    return out;
}

double fitness(std::span<const double> y, std::span<const double> t) {
    if (y.size() != t.size()) throw std::invalid_argument("fitness: trajectory length mismatch");
    if (y.empty()) throw std::invalid_argument("fitness: empty trajectories");
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double e = y[i] - t[i];
        sum += e * e;
    }
    return -(1000.0 / static_cast<double>(y.size())) * sum;
}

double mse(std::span<const double> y, std::span<const double> t) {
    if (y.size() != t.size()) throw std::invalid_argument("mse: trajectory length mismatch");
    if (y.empty()) throw std::invalid_argument("mse: empty trajectories");
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double e = y[i] - t[i];
        sum += e * e;
    }
    return sum / static_cast<double>(y.size());
}

}  // namespace tdneat

#include "tdneat/config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string_view>

namespace tdneat {

std::string to_string(Algo algo) { return algo == Algo::neat ? "neat" : "dneat"; }

Algo algo_from_string(const std::string& name) {
    if (name == "neat") return Algo::neat;
    if (name == "dneat") return Algo::dneat;
    throw std::runtime_error("unknown algorithm '" + name + "' (expected 'neat' or 'dneat')");
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view v, const std::string& where) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw std::runtime_error(where + ": invalid number '" + std::string(v) + "'");
    return out;
}

int parse_int(std::string_view v, const std::string& where) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw std::runtime_error(where + ": invalid integer '" + std::string(v) + "'");
    return out;
}

std::uint64_t parse_u64(std::string_view v, const std::string& where) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw std::runtime_error(where + ": invalid unsigned integer '" + std::string(v) + "'");
    return out;
}

void apply(Config& c, std::string_view key, std::string_view value, const std::string& where) {
    const std::string v(value);
    if (key == "pop_size") c.pop_size = parse_int(value, where);
    else if (key == "weight_init_mean") c.weight_init_mean = parse_double(value, where);
    else if (key == "bias_init_mean") c.bias_init_mean = parse_double(value, where);
    else if (key == "weight_init_stdev") c.weight_init_stdev = parse_double(value, where);
    else if (key == "bias_init_stdev") c.bias_init_stdev = parse_double(value, where);
    else if (key == "du_init_max") c.du_init_max = parse_int(value, where);
    else if (key == "dy_init_max") c.dy_init_max = parse_int(value, where);
    else if (key == "bias_mutate_power") c.bias_mutate_power = parse_double(value, where);
    else if (key == "bias_mutate_rate") c.bias_mutate_rate = parse_double(value, where);
    else if (key == "bias_replace_rate") c.bias_replace_rate = parse_double(value, where);
    else if (key == "weight_mutate_power") c.weight_mutate_power = parse_double(value, where);
    else if (key == "weight_mutate_rate") c.weight_mutate_rate = parse_double(value, where);
    else if (key == "weight_replace_rate") c.weight_replace_rate = parse_double(value, where);
    else if (key == "conn_add_prob") c.conn_add_prob = parse_double(value, where);
    else if (key == "conn_delete_prob") c.conn_delete_prob = parse_double(value, where);
    else if (key == "enabled_mutate_rate") c.enabled_mutate_rate = parse_double(value, where);
    else if (key == "node_add_prob") c.node_add_prob = parse_double(value, where);
    else if (key == "node_delete_prob") c.node_delete_prob = parse_double(value, where);
    else if (key == "compatibility_threshold") c.compatibility_threshold = parse_double(value, where);
    else if (key == "max_stagnation") c.max_stagnation = parse_int(value, where);
    else if (key == "species_elitism") c.species_elitism = parse_int(value, where);
    else if (key == "elitism") c.elitism = parse_int(value, where);
    else if (key == "survival_threshold") c.survival_threshold = parse_double(value, where);
    else if (key == "du_mutate_rate") c.du_mutate_rate = parse_double(value, where);
    else if (key == "dy_mutate_rate") c.dy_mutate_rate = parse_double(value, where);
    else if (key == "du_mutate_power") c.du_mutate_power = parse_double(value, where);
    else if (key == "dy_mutate_power") c.dy_mutate_power = parse_double(value, where);
    else if (key == "disjoint_coefficient") c.disjoint_coefficient = parse_double(value, where);
    else if (key == "weight_coefficient") c.weight_coefficient = parse_double(value, where);
    else if (key == "disabled_inherit_prob") c.disabled_inherit_prob = parse_double(value, where);
    else if (key == "generations") c.generations = parse_int(value, where);
    else if (key == "calls") c.calls = parse_int(value, where);
    else if (key == "seed") c.seed = parse_u64(value, where);
    else if (key == "algo") c.algo = algo_from_string(v);
    else throw std::runtime_error(where + ": unknown config key '" + std::string(key) + "'");
}

void check_prob(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::runtime_error(std::string("config: ") + name + " must lie in [0, 1]");
}

void check_nonneg(double v, const char* name) {
    if (!(v >= 0.0))
        throw std::runtime_error(std::string("config: ") + name + " must be nonnegative");
}

}  // namespace

void Config::validate() const {
    if (pop_size < 1) throw std::runtime_error("config: pop_size must be at least 1");
    if (pop_size < elitism) throw std::runtime_error("config: pop_size must be >= elitism");
    check_prob(bias_mutate_rate, "bias_mutate_rate");
    check_prob(bias_replace_rate, "bias_replace_rate");
    check_prob(weight_mutate_rate, "weight_mutate_rate");
    check_prob(weight_replace_rate, "weight_replace_rate");
    check_prob(conn_add_prob, "conn_add_prob");
    check_prob(conn_delete_prob, "conn_delete_prob");
    check_prob(enabled_mutate_rate, "enabled_mutate_rate");
    check_prob(node_add_prob, "node_add_prob");
    check_prob(node_delete_prob, "node_delete_prob");
    check_prob(survival_threshold, "survival_threshold");
    check_prob(du_mutate_rate, "du_mutate_rate");
    check_prob(dy_mutate_rate, "dy_mutate_rate");
    check_prob(disabled_inherit_prob, "disabled_inherit_prob");
    check_nonneg(weight_init_stdev, "weight_init_stdev");
    check_nonneg(bias_init_stdev, "bias_init_stdev");
    check_nonneg(weight_mutate_power, "weight_mutate_power");
    check_nonneg(bias_mutate_power, "bias_mutate_power");
    check_nonneg(du_mutate_power, "du_mutate_power");
    check_nonneg(dy_mutate_power, "dy_mutate_power");
    check_nonneg(compatibility_threshold, "compatibility_threshold");
    check_nonneg(disjoint_coefficient, "disjoint_coefficient");
    check_nonneg(weight_coefficient, "weight_coefficient");
    if (du_init_max < 0) throw std::runtime_error("config: du_init_max must be nonnegative");
    if (dy_init_max < 0) throw std::runtime_error("config: dy_init_max must be nonnegative");
    if (max_stagnation < 0) throw std::runtime_error("config: max_stagnation must be nonnegative");
    if (species_elitism < 0) throw std::runtime_error("config: species_elitism must be nonnegative");
    if (elitism < 0) throw std::runtime_error("config: elitism must be nonnegative");
    if (generations < 0) throw std::runtime_error("config: generations must be nonnegative");
    if (calls < 1) throw std::runtime_error("config: calls must be at least 1");
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s(line);
        if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw std::runtime_error(where + ": expected 'key = value'");
        apply(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), where);
    }
    cfg.validate();
    return cfg;
}

}  // namespace tdneat

#pragma once

#include <cstdint>
#include <string>

namespace tdneat {

enum class Algo { neat, dneat };

std::string to_string(Algo algo);
Algo algo_from_string(const std::string& name);  // throws std::runtime_error on unknown name

// Every algorithm parameter, with the reference defaults.  Loadable from a
// flat "key = value" text file ('#' starts a comment, keys named exactly as
// the fields below, all keys optional).
struct Config {
    int pop_size = 100;
    double weight_init_mean = 0.0;
    double bias_init_mean = 0.0;
    double weight_init_stdev = 0.5;
    double bias_init_stdev = 0.5;
    int du_init_max = 20;
    int dy_init_max = 20;
    double bias_mutate_power = 0.033;
    double bias_mutate_rate = 0.2;
    double bias_replace_rate = 0.2;
    double weight_mutate_power = 0.1;
    double weight_mutate_rate = 0.6;
    double weight_replace_rate = 0.05;
    double conn_add_prob = 0.2;
    double conn_delete_prob = 0.2;
    double enabled_mutate_rate = 0.2;
    double node_add_prob = 0.2;
    double node_delete_prob = 0.2;
    double compatibility_threshold = 2.3;
    int max_stagnation = 25;
    int species_elitism = 3;
    int elitism = 10;
    double survival_threshold = 0.25;
    double du_mutate_rate = 0.2;
    double dy_mutate_rate = 0.2;
    double du_mutate_power = 2.0;
    double dy_mutate_power = 2.0;

    // Compatibility-distance coefficients (disjoint and excess genes share one).
    double disjoint_coefficient = 1.0;
    double weight_coefficient = 0.5;

    // Chance that a connection gene disabled in either parent stays disabled
    // in the child.
    double disabled_inherit_prob = 0.75;

    int generations = 2500;
    int calls = 10;
    std::uint64_t seed = 1;
    Algo algo = Algo::dneat;

    // Throws std::runtime_error naming the offending field when a value is
    // out of range (probabilities outside [0,1], negative counts or powers,
    // pop_size < elitism, ...).
    void validate() const;
};

Config load_config(const std::string& path);

}  // namespace tdneat

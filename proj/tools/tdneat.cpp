// tdneat command-line tool: evolve NARX-style recurrent networks against a
// dataset, run paired NEAT/dNEAT experiments, and generate plant data.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tdneat/experiment.hpp"
#include "tdneat/network.hpp"
#include "tdneat/parallel.hpp"
#include "tdneat/plant.hpp"
#include "tdneat/population.hpp"

namespace fs = std::filesystem;
using namespace tdneat;

namespace {

struct CommonOverrides {
    std::string config_path;
    std::string algo;
    int generations = -1;
    long long seed = -1;
    int threads = -1;
};

Config make_config(const CommonOverrides& o) {
    Config cfg = o.config_path.empty() ? Config{} : load_config(o.config_path);
    if (!o.algo.empty()) cfg.algo = algo_from_string(o.algo);
    if (o.generations >= 0) cfg.generations = o.generations;
    if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
    cfg.validate();
    return cfg;
}

int effective_threads(int flag) { return flag >= 0 ? flag : thread_count_from_env(); }

void print_run_summary(const RunResult& result, const Dataset& dataset) {
    const GenerationStats& last = result.log.back();
    std::cout << "generations        " << last.generation << "\n"
              << "best fitness       " << format_double(last.best_fitness) << "\n"
              << "best MSE           " << format_double(-last.best_fitness / 1000.0) << "\n"
              << "winner du/dy       " << result.winner.du << "/" << result.winner.dy << "\n"
              << "winner nodes       " << result.winner.nodes.size() << "\n"
              << "winner connections " << result.winner.connections.size() << "\n"
              << "species            " << last.species_count << "\n"
              << "dataset samples    " << dataset.size() << "\n"
              << "wall seconds       " << format_double(result.wall_seconds) << "\n";
    if (!result.extinction_generations.empty()) {
        std::cout << "extinctions at     ";
        for (std::size_t i = 0; i < result.extinction_generations.size(); ++i)
            std::cout << (i ? "," : "") << result.extinction_generations[i];
        std::cout << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tdneat: neuroevolution of time-delay NARX networks"};
    app.require_subcommand(1);

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "run one evolution on a dataset");
    CommonOverrides ev;
    std::string ev_dataset, ev_out;
    evolve_cmd->add_option("--config", ev.config_path, "config file (key = value lines)");
    evolve_cmd->add_option("--dataset", ev_dataset, "learning dataset CSV (k,u,t)")->required();
    evolve_cmd->add_option("--algo", ev.algo, "neat or dneat");
    evolve_cmd->add_option("--generations", ev.generations, "generation budget");
    evolve_cmd->add_option("--seed", ev.seed, "run seed");
    evolve_cmd->add_option("--threads", ev.threads, "evaluation threads (0 = auto)");
    evolve_cmd->add_option("--out", ev_out, "output directory")->required();

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment",
                                       "paired NEAT/dNEAT comparison over repeated calls");
    CommonOverrides ex;
    std::string ex_learning, ex_out;
    std::vector<std::string> ex_verify;
    int ex_calls = -1;
    exp_cmd->add_option("--config", ex.config_path, "config file (key = value lines)");
    exp_cmd->add_option("--learning", ex_learning, "learning dataset CSV")->required();
    exp_cmd->add_option("--verify", ex_verify, "verification dataset CSV (repeatable)");
    exp_cmd->add_option("--calls", ex_calls, "independent calls per algorithm");
    exp_cmd->add_option("--generations", ex.generations, "generation budget per call");
    exp_cmd->add_option("--seed", ex.seed, "base seed (call c uses seed + c)");
    exp_cmd->add_option("--threads", ex.threads, "evaluation threads (0 = auto)");
    exp_cmd->add_option("--out", ex_out, "output directory")->required();

    // simulate-plant
    auto* plant_cmd = app.add_subcommand("simulate-plant",
                                         "drive the exemplary delayed plant with an input CSV");
    std::string pl_input, pl_out;
    bool pl_normalize = false;
    plant_cmd->add_option("--input", pl_input, "input CSV (k,u)")->required();
    plant_cmd->add_option("--out", pl_out, "output dataset CSV (k,u,t)")->required();
    plant_cmd->add_flag("--normalize", pl_normalize, "divide the plant response by 30");

    // gen-input
    auto* gen_cmd = app.add_subcommand("gen-input", "generate a piecewise-constant excitation");
    ExcitationSpec spec;
    std::string gen_out;
    long long gen_seed = 1;
    gen_cmd->add_option("--length", spec.length, "number of samples");
    gen_cmd->add_option("--hold", spec.hold, "samples per level");
    gen_cmd->add_option("--lo", spec.lo, "lower amplitude bound");
    gen_cmd->add_option("--hi", spec.hi, "upper amplitude bound");
    gen_cmd->add_option("--seed", gen_seed, "stream seed");
    gen_cmd->add_option("--out", gen_out, "output CSV (k,u)")->required();

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "free-run a saved genome over a dataset");
    std::string eval_genome, eval_dataset;
    eval_cmd->add_option("--genome", eval_genome, "genome file")->required();
    eval_cmd->add_option("--dataset", eval_dataset, "dataset CSV (k,u,t)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*evolve_cmd) {
            const Config cfg = make_config(ev);
            const Dataset dataset = load_dataset(ev_dataset);
            fs::create_directories(ev_out);
            const RunResult result = evolve(cfg, dataset, effective_threads(ev.threads));
            write_generation_log(result, (fs::path(ev_out) / "gen_log.csv").string());
            write_winner(result.winner, (fs::path(ev_out) / "winner.json").string());
            print_run_summary(result, dataset);
        } else if (*exp_cmd) {
            Config cfg = make_config(ex);
            if (ex_calls >= 1) cfg.calls = ex_calls;
            cfg.validate();
            Dataset learning = load_dataset(ex_learning);
            learning.label = "learning";
            std::vector<Dataset> verifications;
            for (const std::string& path : ex_verify) {
                verifications.push_back(load_dataset(path));
                verifications.back().label = "verification-" + std::to_string(verifications.size());
            }
            fs::create_directories(ex_out);
            const ExperimentReport report =
                run_experiment(cfg, learning, verifications, effective_threads(ex.threads));
            write_report_csv(report, (fs::path(ex_out) / "report.csv").string());
            write_report_text(report, (fs::path(ex_out) / "report.txt").string());
            write_curves_csv(report, (fs::path(ex_out) / "curves.csv").string());
            for (const AlgorithmResult& ar : report.algorithms) {
                for (std::size_t c = 0; c < ar.calls.size(); ++c) {
                    const std::string tag = to_string(ar.algo) + "_call" + std::to_string(c);
                    write_generation_log(ar.calls[c],
                                         (fs::path(ex_out) / ("gen_log_" + tag + ".csv")).string());
                    write_winner(ar.calls[c].winner,
                                 (fs::path(ex_out) / ("winner_" + tag + ".json")).string());
                }
            }
            std::cout << report_text(report);
        } else if (*plant_cmd) {
            const std::vector<double> u = load_input_csv(pl_input);
            std::vector<double> x = simulate_exemplary(u);
            if (pl_normalize) x = normalize(x);
            save_dataset(Dataset{u, std::move(x), ""}, pl_out);
        } else if (*gen_cmd) {
            if (gen_seed < 0) throw std::runtime_error("gen-input: seed must be nonnegative");
            spec.seed = static_cast<std::uint64_t>(gen_seed);
            save_input_csv(generate_excitation(spec), gen_out);
        } else if (*eval_cmd) {
            const Genome genome = load_genome(eval_genome);
            const Dataset dataset = load_dataset(eval_dataset);
            const CompiledNetwork net = CompiledNetwork::compile(genome);
            const std::vector<double> y = net.simulate_free_run(dataset.u);
            const double f = fitness(y, dataset.t);
            std::cout << "mse = " << format_double(-f / 1000.0) << "\n"
                      << "fitness = " << format_double(f) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

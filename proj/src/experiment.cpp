#include "tdneat/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "tdneat/network.hpp"

namespace tdneat {

ExperimentReport run_experiment(const Config& config, const Dataset& learning,
                                const std::vector<Dataset>& verifications, int threads) {
    config.validate();
    std::vector<const Dataset*> datasets{&learning};
    for (const Dataset& v : verifications) datasets.push_back(&v);

    ExperimentReport report;
    report.dataset_labels.push_back(learning.label.empty() ? "learning" : learning.label);
    for (std::size_t i = 0; i < verifications.size(); ++i) {
        const std::string& label = verifications[i].label;
        report.dataset_labels.push_back(
            label.empty() ? "verification-" + std::to_string(i + 1) : label);
    }

    for (Algo algo : {Algo::neat, Algo::dneat}) {
        AlgorithmResult ar;
        ar.algo = algo;
        ar.winner_mse.assign(datasets.size(), {});
        for (int call = 0; call < config.calls; ++call) {
            Config call_config = config;
            call_config.algo = algo;
            call_config.seed = config.seed + static_cast<std::uint64_t>(call);
            RunResult run = evolve(call_config, learning, threads);
            const CompiledNetwork net = CompiledNetwork::compile(run.winner);
            for (std::size_t d = 0; d < datasets.size(); ++d) {
                const std::vector<double> y = net.simulate_free_run(datasets[d]->u);
                ar.winner_mse[d].push_back(-fitness(y, datasets[d]->t) / 1000.0);
            }
            ar.calls.push_back(std::move(run));
        }
        for (std::size_t d = 0; d < datasets.size(); ++d) {
            const std::vector<double>& values = ar.winner_mse[d];
            MseSummary s;
            s.best = *std::min_element(values.begin(), values.end());
            s.worst = *std::max_element(values.begin(), values.end());
            s.average = 0.0;
            for (double v : values) s.average += v;
            s.average /= static_cast<double>(values.size());
            ar.summary.push_back(s);
        }
        report.algorithms.push_back(std::move(ar));
    }
    return report;
}

void write_generation_log(const RunResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write generation log '" + path + "'");
    out << "generation,mean_fitness,best_fitness,species_count,best_du,best_dy,"
           "best_node_count,best_connection_count\n";
    for (const GenerationStats& s : result.log) {
        out << s.generation << ',' << format_double(s.mean_fitness) << ','
            << format_double(s.best_fitness) << ',' << s.species_count << ',' << s.best_du << ','
            << s.best_dy << ',' << s.best_node_count << ',' << s.best_connection_count << '\n';
    }
    if (!out) throw std::runtime_error("error while writing generation log '" + path + "'");
}

void write_report_csv(const ExperimentReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report '" + path + "'");
    out << "dataset,algorithm,best_mse,worst_mse,average_mse\n";
    for (std::size_t d = 0; d < report.dataset_labels.size(); ++d) {
        for (const AlgorithmResult& ar : report.algorithms) {
            const MseSummary& s = ar.summary[d];
            out << report.dataset_labels[d] << ',' << to_string(ar.algo) << ','
                << format_double(s.best) << ',' << format_double(s.worst) << ','
                << format_double(s.average) << '\n';
        }
    }
    if (!out) throw std::runtime_error("error while writing report '" + path + "'");
}

std::string report_text(const ExperimentReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(18) << "dataset" << std::setw(10) << "algorithm"
        << std::setw(22) << "description" << std::right << std::setw(14) << "MSE (x 1e-2)"
        << '\n';
    out << std::string(64, '-') << '\n';
    auto line = [&](const std::string& dataset, const std::string& algo, const char* desc,
                    double value) {
        std::ostringstream v;
        v << std::fixed << std::setprecision(5) << value * 100.0;
        out << std::left << std::setw(18) << dataset << std::setw(10) << algo << std::setw(22)
            << desc << std::right << std::setw(14) << v.str() << '\n';
    };
    for (std::size_t d = 0; d < report.dataset_labels.size(); ++d) {
        for (const AlgorithmResult& ar : report.algorithms) {
            const MseSummary& s = ar.summary[d];
            line(report.dataset_labels[d], to_string(ar.algo), "best of winners", s.best);
            line(report.dataset_labels[d], to_string(ar.algo), "worst of winners", s.worst);
            line(report.dataset_labels[d], to_string(ar.algo), "average of winners", s.average);
        }
    }
    return out.str();
}

void write_report_text(const ExperimentReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report '" + path + "'");
    out << report_text(report);
    if (!out) throw std::runtime_error("error while writing report '" + path + "'");
}

void write_curves_csv(const ExperimentReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write curves '" + path + "'");
    out << "generation";
    for (const AlgorithmResult& ar : report.algorithms)
        out << ',' << to_string(ar.algo) << "_mean_fitness," << to_string(ar.algo)
            << "_best_fitness";
    out << '\n';

    std::size_t generations = 0;
    for (const AlgorithmResult& ar : report.algorithms)
        for (const RunResult& run : ar.calls) generations = std::max(generations, run.log.size());

    for (std::size_t g = 0; g < generations; ++g) {
        out << g;
        for (const AlgorithmResult& ar : report.algorithms) {
            double mean_sum = 0.0, best_sum = 0.0;
            std::size_t count = 0;
            for (const RunResult& run : ar.calls) {
                if (g >= run.log.size()) continue;
                mean_sum += run.log[g].mean_fitness;
                best_sum += run.log[g].best_fitness;
                ++count;
            }
            out << ',' << format_double(count ? mean_sum / count : 0.0) << ','
                << format_double(count ? best_sum / count : 0.0);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("error while writing curves '" + path + "'");
}

void write_winner(const Genome& winner, const std::string& path) { save_genome(winner, path); }

}  // namespace tdneat

#include "tdneat/plant.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string_view>

namespace tdneat {

std::vector<double> simulate_exemplary(std::span<const double> u) {
    std::vector<double> x(u.size(), 0.0);
    auto x_at = [&](std::ptrdiff_t i) { return i < 0 ? 0.0 : x[static_cast<std::size_t>(i)]; };
    auto u_at = [&](std::ptrdiff_t i) { return i < 0 ? 0.0 : u[static_cast<std::size_t>(i)]; };
    for (std::size_t k = 0; k < u.size(); ++k) {
        const auto i = static_cast<std::ptrdiff_t>(k);
        x[k] = -0.05 * x_at(i - 1) + 0.02 * x_at(i - 5) + std::sin(x_at(i - 10) / 10.0) +
               u_at(i - 15);
    }
    return x;
}

std::vector<double> normalize(std::span<const double> x) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / 30.0;
    return out;
}

std::vector<double> generate_excitation(const ExcitationSpec& spec, Rng& rng) {
    if (spec.length < 1) throw std::invalid_argument("excitation: length must be at least 1");
    if (spec.hold < 1) throw std::invalid_argument("excitation: hold must be at least 1");
    if (spec.lo > spec.hi) throw std::invalid_argument("excitation: lo must not exceed hi");
    std::vector<double> u(spec.length);
    double level = 0.0;
    for (std::size_t k = 0; k < spec.length; ++k) {
        if (k % spec.hold == 0) level = rng.uniform_real(spec.lo, spec.hi);
        u[k] = level;
    }
    return u;
}

std::vector<double> generate_excitation(const ExcitationSpec& spec) {
    Rng rng(spec.seed);
    return generate_excitation(spec, rng);
}

Dataset make_exemplary_dataset(const ExcitationSpec& spec, std::string label) {
    Dataset d;
    d.u = generate_excitation(spec);
    d.t = normalize(simulate_exemplary(d.u));
    d.label = std::move(label);
    return d;
}

Dataset exemplary_learning_dataset() {
    return make_exemplary_dataset({1000, 50, -1.0, 1.0, 1001}, "learning");
}

Dataset exemplary_verification_dataset_1() {
    return make_exemplary_dataset({1000, 25, -1.0, 1.0, 1002}, "verification-1");
}

Dataset exemplary_verification_dataset_2() {
    return make_exemplary_dataset({1000, 100, -1.0, 1.0, 1003}, "verification-2");
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

namespace {

double parse_field(std::string_view field, const std::string& path, int lineno,
                   const char* column) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": invalid number '" +
                                 std::string(field) + "' in column " + column);
    if (!std::isfinite(out))
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": non-finite value in column " + column);
    return out;
}

long parse_index(std::string_view field, const std::string& path, int lineno) {
    long out = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": invalid index '" +
                                 std::string(field) + "' in column k");
    return out;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

// Shared row walker for the k,u[,t] CSV layouts.
template <typename RowFn>
void read_csv(const std::string& path, const std::string& expected_header, std::size_t columns,
              RowFn&& on_row) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open dataset file '" + path + "'");
    std::string line;
    int lineno = 0;
    long expected_k = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1) {
            if (line != expected_header)
                throw std::runtime_error(path + ":1: expected header '" + expected_header + "'");
            continue;
        }
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != columns)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(columns) + " comma-separated fields, got " +
                                     std::to_string(fields.size()));
        const long k = parse_index(fields[0], path, lineno);
        if (k != expected_k)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": sample index must be contiguous from 0 (expected " +
                                     std::to_string(expected_k) + ", got " + std::to_string(k) +
                                     ")");
        ++expected_k;
        on_row(fields, lineno);
    }
    if (expected_k == 0) throw std::runtime_error(path + ": dataset is empty");
}

}  // namespace

Dataset load_dataset(const std::string& path) {
    Dataset d;
    read_csv(path, "k,u,t", 3, [&](const std::vector<std::string_view>& fields, int lineno) {
        d.u.push_back(parse_field(fields[1], path, lineno, "u"));
        d.t.push_back(parse_field(fields[2], path, lineno, "t"));
    });
    d.label = path;
    return d;
}

void save_dataset(const Dataset& dataset, const std::string& path) {
    if (dataset.u.size() != dataset.t.size())
        throw std::invalid_argument("save_dataset: u and t lengths differ");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write dataset file '" + path + "'");
    out << "k,u,t\n";
    for (std::size_t k = 0; k < dataset.u.size(); ++k)
        out << k << ',' << format_double(dataset.u[k]) << ',' << format_double(dataset.t[k])
            << '\n';
    if (!out) throw std::runtime_error("error while writing dataset file '" + path + "'");
}

std::vector<double> load_input_csv(const std::string& path) {
    std::vector<double> u;
    read_csv(path, "k,u", 2, [&](const std::vector<std::string_view>& fields, int lineno) {
        u.push_back(parse_field(fields[1], path, lineno, "u"));
    });
    return u;
}

void save_input_csv(std::span<const double> u, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write input file '" + path + "'");
    out << "k,u\n";
    for (std::size_t k = 0; k < u.size(); ++k)
        out << k << ',' << format_double(u[k]) << '\n';
    if (!out) throw std::runtime_error("error while writing input file '" + path + "'");
}

}  // namespace tdneat

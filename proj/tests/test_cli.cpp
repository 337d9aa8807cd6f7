// End-to-end checks of the command-line tool.  The binary path arrives as
// argv[1] (wired up in CMake).
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "tdneat/plant.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_dir;

int run(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " >" + (g_dir / "stdout.txt").string() + " 2>" +
                            (g_dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string out_path(const char* name) { return (g_dir / name).string(); }

}  // namespace

TEST_CASE("gen-input, simulate-plant and eval form a working pipeline") {
    REQUIRE(run("gen-input --length 60 --hold 10 --lo -1 --hi 1 --seed 4 --out " +
                out_path("u.csv")) == 0);
    REQUIRE(run("simulate-plant --input " + out_path("u.csv") + " --out " + out_path("d.csv") +
                " --normalize") == 0);
    const tdneat::Dataset d = tdneat::load_dataset(out_path("d.csv"));
    CHECK(d.size() == 60);

    REQUIRE(run("evolve --dataset " + out_path("d.csv") +
                " --generations 3 --seed 2 --algo dneat --threads 1 --out " +
                out_path("run")) == 0);
    CHECK(fs::exists(g_dir / "run" / "gen_log.csv"));
    CHECK(fs::exists(g_dir / "run" / "winner.json"));

    REQUIRE(run("eval --genome " + out_path("run/winner.json") + " --dataset " +
                out_path("d.csv")) == 0);
    const std::string printed = slurp(g_dir / "stdout.txt");
    CHECK(printed.find("mse = ") != std::string::npos);
    CHECK(printed.find("fitness = ") != std::string::npos);
}

TEST_CASE("simulate-plant reproduces the unit-step delay") {
    {
        std::ofstream out(out_path("step.csv"), std::ios::binary);
        out << "k,u\n";
        for (int k = 0; k < 20; ++k) out << k << ",1\n";
    }
    REQUIRE(run("simulate-plant --input " + out_path("step.csv") + " --out " +
                out_path("step_out.csv")) == 0);
    const tdneat::Dataset d = tdneat::load_dataset(out_path("step_out.csv"));
    for (int k = 0; k < 15; ++k) CHECK(d.t[static_cast<std::size_t>(k)] == 0.0);
    CHECK(d.t[15] == 1.0);
}

TEST_CASE("experiment writes the report bundle") {
    REQUIRE(run("gen-input --length 50 --hold 10 --seed 6 --out " + out_path("lu.csv")) == 0);
    REQUIRE(run("simulate-plant --input " + out_path("lu.csv") + " --out " + out_path("ld.csv") +
                " --normalize") == 0);
    REQUIRE(run("gen-input --length 50 --hold 5 --seed 7 --out " + out_path("vu.csv")) == 0);
    REQUIRE(run("simulate-plant --input " + out_path("vu.csv") + " --out " + out_path("vd.csv") +
                " --normalize") == 0);
    REQUIRE(run("experiment --learning " + out_path("ld.csv") + " --verify " + out_path("vd.csv") +
                " --calls 2 --generations 3 --seed 3 --threads 1 --out " + out_path("exp")) == 0);
    for (const char* name :
         {"report.csv", "report.txt", "curves.csv", "gen_log_neat_call0.csv",
          "gen_log_dneat_call1.csv", "winner_neat_call0.json", "winner_dneat_call1.json"})
        CHECK(fs::exists(g_dir / "exp" / name));

    std::istringstream report(slurp(g_dir / "exp" / "report.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(report, line)) ++rows;
    CHECK(rows == 1 + 2 * 2);  // header + datasets x algorithms
}

TEST_CASE("bad invocations exit nonzero with a reason") {
    CHECK(run("no-such-command") != 0);
    CHECK(run("evolve --dataset missing.csv --out " + out_path("x")) != 0);
    CHECK(slurp(g_dir / "stderr.txt").find("error:") != std::string::npos);
    CHECK(run("evolve") != 0);  // missing required flags
    CHECK(run("gen-input --length 10 --lo 2 --hi 1 --out " + out_path("bad.csv")) != 0);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-tdneat-binary>\n");
        return 2;
    }
    g_cli = argv[1];
    g_dir = fs::temp_directory_path() / ("tdneat_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(g_dir);
    doctest::Context context;
    const int rc = context.run();
    fs::remove_all(g_dir);
    return rc;
}

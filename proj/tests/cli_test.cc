// Copyright 2026 The memtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "memtele/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "gtest/gtest.h"
#include "memtele/analysis.h"

using namespace memtele;
using memtele::cli::run_cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<double> fidelities(const std::string &out) {
    std::vector<double> f;
    std::regex row(R"(^(phi|psi)[+-]\s+\S+\s+(\S+))");
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) {
        std::smatch m;
        if (std::regex_search(line, m, row)) {
            f.push_back(std::stod(m[2]));
        }
    }
    return f;
}

double worst(const std::string &out) {
    auto pos = out.find("worst-case fidelity:");
    return std::stod(out.substr(pos + 20));
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("memtele_cli_test_" + name);
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(cli, run_perfect_anticorrelation) {
    auto r = invoke({"run", "--K", "-1", "--t2", "1.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto f = fidelities(r.out);
    ASSERT_EQ(f.size(), 4u);
    for (double v : f) {
        EXPECT_NEAR(v, 1.0, 1e-12);
    }
}

TEST(cli, run_noiseless_standard) {
    auto r = invoke({"run", "--t2", "0", "--strategy", "standard"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(worst(r.out), 1.0, 1e-12);
}

TEST(cli, run_standard_at_target_kappa) {
    auto r = invoke({"run", "--K", "-0.9", "--kappa", "0.1", "--strategy", "standard"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(worst(r.out), 0.55, 1e-12);
    auto m = invoke({"run", "--K", "-0.9", "--kappa", "0.1"});
    EXPECT_NEAR(worst(m.out), f_memory(0.1, 0.1), 1e-12);
}

TEST(cli, run_writes_csv) {
    auto path = temp_path("run.csv");
    auto r = invoke({"run", "--K", "-0.5", "--t2", "1", "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto csv = slurp(path);
    EXPECT_EQ(csv.rfind("outcome,probability,fidelity,phase_gate,rho_hh,rho_hv_re,rho_hv_im,rho_vv\nphi+,0.25,", 0),
              0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
    std::filesystem::remove(path);
}

TEST(cli, figure2_default_table) {
    auto path = temp_path("fig2.csv");
    auto r = invoke({"figure2", "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto csv = slurp(path);
    std::istringstream in(csv);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    EXPECT_EQ(header,
              "kappa_abs,f_standard,f_optimal,f_memory_dk0,f_memory_dk0.05,f_memory_dk0.1,f_memory_dk0.2,"
              "f_memory_dk0.3,f_memory_dk0.4,f_memory_dk0.5");
    EXPECT_EQ(first.rfind("0,0.5,0.666666666667,1,", 0), 0u);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 102);

    // Parsing back gives the closed forms at 12 significant digits.
    std::string line;
    while (std::getline(in, line)) {
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            v.push_back(std::stod(cell));
        }
        ASSERT_EQ(v.size(), 10u);
        EXPECT_NEAR(v[1], f_standard(v[0]), 1e-11);
        EXPECT_NEAR(v[2], f_optimal(v[0]), 1e-11);
        EXPECT_NEAR(v[5], f_memory(v[0], 0.1), 1e-11);
    }

    auto again = invoke({"figure2", "--out", path.string()});
    ASSERT_EQ(again.code, 0);
    EXPECT_EQ(slurp(path), csv);
    std::filesystem::remove(path);
}

TEST(cli, figure2_custom_grid_to_stdout) {
    auto r = invoke({"figure2", "--points", "2", "--dk", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "kappa_abs,f_standard,f_optimal,f_memory_dk0\n0,0.5,0.666666666667,1\n1,1,1,1\n");
}

TEST(cli, figure2_unwritable_path) {
    auto r = invoke({"figure2", "--out", "/nonexistent-dir/fig.csv"});
    EXPECT_EQ(r.code, cli::kIo);
}

TEST(cli, oracle_default_config_passes) {
    auto r = invoke({"oracle", "--samples", "100000", "--seed", "42"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(cli, oracle_noiseless_config) {
    auto r = invoke({"oracle", "--t2", "0", "--samples", "1000"});
    EXPECT_EQ(r.code, 0) << r.out;
}

TEST(cli, oracle_tiny_sigma_budget_fails) {
    auto r = invoke({"oracle", "--K", "-0.5", "--t2", "1", "--samples", "2000", "--sigma", "0.0001"});
    EXPECT_EQ(r.code, cli::kStatisticalFailure) << r.out;
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(cli, oracle_rejects_too_few_samples) {
    EXPECT_EQ(invoke({"oracle", "--samples", "10"}).code, cli::kUsage);
}

TEST(cli, crossover_table) {
    auto r = invoke({"crossover", "--dk", "0.1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto pos = r.out.find("0.1,");
    ASSERT_NE(pos, std::string::npos);
    double k = std::stod(r.out.substr(pos + 4));
    EXPECT_GT(k, 1e-4);
    EXPECT_LT(k, 1e-2);
    EXPECT_NEAR(k, crossover(0.1), 1e-12);

    auto list = invoke({"crossover", "--dk", "0.05,0.1,0.2,0.3"});
    ASSERT_EQ(list.code, 0);
    std::istringstream in(list.out);
    std::string line;
    std::getline(in, line);
    double prev = 0;
    int rows = 0;
    while (std::getline(in, line)) {
        double v = std::stod(line.substr(line.find(',') + 1));
        EXPECT_GT(v, prev);
        EXPECT_LT(v, 1.0);
        prev = v;
        ++rows;
    }
    EXPECT_EQ(rows, 4);
}

TEST(cli, crossover_without_sign_change_exits_five) {
    EXPECT_EQ(invoke({"crossover", "--dk", "0.45"}).code, cli::kNoCrossover);
    EXPECT_EQ(invoke({"crossover", "--dk", "0.6"}).code, cli::kUsage);
}

TEST(cli, help_for_every_command) {
    for (const char *cmd : {"run", "figure2", "oracle", "crossover"}) {
        auto r = invoke({cmd, "--help"});
        EXPECT_EQ(r.code, 0) << cmd;
        EXPECT_NE(r.out.find("--"), std::string::npos) << cmd;
    }
    EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(cli, usage_errors) {
    EXPECT_EQ(invoke({}).code, cli::kUsage);
    EXPECT_EQ(invoke({"teleport"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"run", "--bogus", "1"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"run", "--K", "-1.5"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"run", "--var", "0"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"run", "--t2", "-1"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"run", "--t2", "1", "--kappa", "0.5"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"run", "--kappa", "0"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"run", "--strategy", "optimal"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"run", "--phase", "sideways"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"run", "--alpha-re", "0", "--beta-re", "0"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"figure2", "--points", "1"}).code, cli::kUsage);
}

TEST(cli, explicit_and_disabled_phase_gate) {
    auto off = invoke({"run", "--K", "-1", "--t2", "0.5", "--phase", "off"});
    ASSERT_EQ(off.code, 0);
    EXPECT_NEAR(worst(off.out), 1.0 - 0.5 * (1.0 - std::cos(2.0 * 0.5)), 1e-12);
    auto fixed = invoke({"run", "--K", "-1", "--t2", "0.5", "--phase", "0"});
    EXPECT_NEAR(worst(fixed.out), worst(off.out), 1e-12);
}

TEST(cli, config_file_with_flag_override) {
    auto path = temp_path("config.ini");
    {
        std::ofstream cfg(path);
        cfg << "K=-1\nt2=2.0\nstrategy=standard\n";
    }
    auto from_file = invoke({"run", "--config", path.string()});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    EXPECT_NE(from_file.out.find("strategy standard, K = -1"), std::string::npos) << from_file.out;
    EXPECT_NEAR(worst(from_file.out), f_standard(std::exp(-2.0)), 1e-12);

    auto overridden = invoke({"run", "--config", path.string(), "--strategy", "memory"});
    ASSERT_EQ(overridden.code, 0);
    EXPECT_NEAR(worst(overridden.out), 1.0, 1e-12);
    std::filesystem::remove(path);

    EXPECT_EQ(invoke({"run", "--config", "/nonexistent/config.ini"}).code, cli::kIo);
}

TEST(cli, config_file_for_other_commands) {
    auto path = temp_path("fig.ini");
    {
        std::ofstream cfg(path);
        cfg << "points=2\ndk=0\n";
    }
    auto r = invoke({"figure2", "--config", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "kappa_abs,f_standard,f_optimal,f_memory_dk0\n0,0.5,0.666666666667,1\n1,1,1,1\n");
    {
        std::ofstream cfg(path);
        cfg << "dk=0.45\n";
    }
    EXPECT_EQ(invoke({"crossover", "--config", path.string()}).code, cli::kNoCrossover);
    {
        std::ofstream cfg(path);
        cfg << "bogus=1\n";
    }
    EXPECT_EQ(invoke({"run", "--config", path.string()}).code, cli::kUsage);
    std::filesystem::remove(path);
}

TEST(cli, output_is_deterministic) {
    auto a = invoke({"oracle", "--K", "-0.5", "--samples", "5000", "--seed", "3"});
    auto b = invoke({"oracle", "--K", "-0.5", "--samples", "5000", "--seed", "3", "--threads", "1"});
    EXPECT_EQ(a.out, b.out);
}

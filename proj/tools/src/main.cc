// Copyright 2026 The Clusterlab Authors
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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "config.h"
#include "runner.h"
#include "sweep.h"

#ifndef CLUSTERLAB_SCENARIOS_DIR
#define CLUSTERLAB_SCENARIOS_DIR "scenarios"
#endif

namespace {

namespace fs = std::filesystem;
using namespace clusterlab::cli;

fs::path scenarios_dir(const std::string &flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char *env = std::getenv("CLUSTERLAB_SCENARIOS_DIR")) {
        return env;
    }
    return CLUSTERLAB_SCENARIOS_DIR;
}

int run_one(const fs::path &config_path, const RunOptions &options, const fs::path &output_dir) {
    const ScenarioConfig cfg = parse_scenario(load_json(config_path));
    const RunResult result = run_scenario(cfg, options);
    const fs::path csv = write_result(result, output_dir, cfg.output_path);
    std::cout << csv.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact-diagonalization simulator for cluster-state generation in driven Fermi-Hubbard lattices"};
    app.require_subcommand(1);
    // Global flags may also follow the subcommand.
    app.fallthrough();

    std::string output_dir = "results";
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    std::string time_units = "invJ";
    std::uint64_t max_dim = 1'000'000;
    std::uint64_t max_nnz = 2'000'000;
    std::string scenario_flag;

    app.add_option("--output-dir", output_dir, "Directory for CSV and metadata files")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads for samples and sweep points")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--time-units", time_units, "Time column units")
        ->check(CLI::IsMember({"invJ", "seconds"}))
        ->capture_default_str();
    app.add_option("--max-dim", max_dim, "Hilbert-space dimension cap")->capture_default_str();
    app.add_option("--max-nnz", max_nnz, "Operator nonzero cap")->capture_default_str();
    app.add_option("--scenarios-dir", scenario_flag, "Directory holding the canned scenarios");

    std::string config_path;
    auto *run = app.add_subcommand("run", "Run one scenario config");
    run->add_option("config", config_path, "Scenario JSON file")->required();

    std::vector<std::string> grids;
    auto *sweep = app.add_subcommand("sweep", "Run a parameter sweep over a base config");
    sweep->add_option("config", config_path, "Base scenario JSON file")->required();
    sweep->add_option("--grid", grids, "path[,path...]=[values]; repeat for a Cartesian product");

    auto *validate = app.add_subcommand("validate", "Check a config without running it");
    validate->add_option("config", config_path, "Scenario JSON file")->required();

    auto *scenarios = app.add_subcommand("scenarios", "Canned reproduction scenarios");
    scenarios->require_subcommand(1);
    auto *list = scenarios->add_subcommand("list", "List canned scenarios");
    std::string scenario_name;
    auto *run_named = scenarios->add_subcommand("run", "Run a canned scenario by name");
    run_named->add_option("name", scenario_name, "Scenario name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    RunOptions options;
    options.threads = threads;
    options.time_units = time_units == "seconds" ? OutputTimeUnit::kSeconds : OutputTimeUnit::kInvJ;
    options.max_dimension = max_dim;
    options.max_nonzeros = max_nnz;

    try {
        if (run->parsed()) {
            return run_one(config_path, options, output_dir);
        }
        if (validate->parsed()) {
            const ScenarioConfig cfg = parse_scenario(load_json(config_path));
            check_resources(cfg, options);
            std::cout << "ok: " << cfg.name << " (" << cfg.geometry.describe() << ", "
                      << clusterlab::to_string(cfg.model) << ", " << to_string(cfg.protocol) << ")\n";
            return 0;
        }
        if (sweep->parsed()) {
            std::vector<GridAxis> axes;
            for (const std::string &g : grids) {
                axes.push_back(parse_grid(g));
            }
            const auto points = run_sweep(load_json(config_path), axes, options, output_dir);
            std::size_t ok = 0;
            for (const SweepPoint &p : points) {
                if (p.ok) {
                    ++ok;
                    std::cout << p.csv.string() << '\n';
                } else {
                    std::cerr << "point " << p.index << " " << p.overrides.dump() << ": " << p.error << '\n';
                }
            }
            if (ok == 0 && !points.empty()) {
                return points.front().exit_code;
            }
            return 0;
        }
        const fs::path dir = scenarios_dir(scenario_flag);
        if (list->parsed()) {
            std::vector<fs::path> files;
            for (const auto &entry : fs::directory_iterator(dir)) {
                if (entry.path().extension() == ".json") {
                    files.push_back(entry.path());
                }
            }
            std::sort(files.begin(), files.end());
            for (const fs::path &f : files) {
                const auto doc = load_json(f);
                std::cout << f.stem().string() << "\t" << doc.value("description", std::string()) << '\n';
            }
            return 0;
        }
        if (run_named->parsed()) {
            const fs::path file = dir / (scenario_name + ".json");
            if (!fs::exists(file)) {
                throw ConfigError("no canned scenario named '" + scenario_name + "' in " + dir.string());
            }
            return run_one(file, options, output_dir);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return 0;
}

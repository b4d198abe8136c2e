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

#include "sweep.h"

#include <fstream>
#include <mutex>

#include "clusterlab/errors.h"
#include "thread_pool.h"

namespace clusterlab::cli {

GridAxis parse_grid(const std::string &spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("grid '" + spec + "': expected path[,path...]=[values]");
    }
    GridAxis axis;
    std::string paths = spec.substr(0, eq);
    std::size_t start = 0;
    while (start <= paths.size()) {
        const auto comma = paths.find(',', start);
        const std::string p = paths.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (p.empty()) {
            throw ConfigError("grid '" + spec + "': empty parameter path");
        }
        axis.paths.push_back(p);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    nlohmann::json values;
    try {
        values = nlohmann::json::parse(spec.substr(eq + 1));
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("grid '" + spec + "': " + e.what());
    }
    if (!values.is_array()) {
        throw ConfigError("grid '" + spec + "': values must be a JSON list");
    }
    for (const auto &v : values) {
        if (axis.paths.size() == 1) {
            axis.values.push_back({v});
            continue;
        }
        if (!v.is_array() || v.size() != axis.paths.size()) {
            throw ConfigError("grid '" + spec + "': each entry must list one value per path");
        }
        axis.values.emplace_back(v.begin(), v.end());
    }
    return axis;
}

std::vector<std::vector<std::pair<std::string, nlohmann::json>>> expand_grid(const std::vector<GridAxis> &axes) {
    std::vector<std::vector<std::pair<std::string, nlohmann::json>>> points{{}};
    for (const GridAxis &axis : axes) {
        std::vector<std::vector<std::pair<std::string, nlohmann::json>>> next;
        for (const auto &prefix : points) {
            for (const auto &row : axis.values) {
                auto p = prefix;
                for (std::size_t k = 0; k < axis.paths.size(); ++k) {
                    p.emplace_back(axis.paths[k], row[k]);
                }
                next.push_back(std::move(p));
            }
        }
        points = std::move(next);
    }
    return points;
}

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const ConfigError *>(&e)) {
        return 2;
    }
    if (dynamic_cast<const ConvergenceError *>(&e)) {
        return 3;
    }
    if (dynamic_cast<const ResourceLimitError *>(&e)) {
        return 4;
    }
    return 1;
}

std::vector<SweepPoint> run_sweep(
    const nlohmann::json &base,
    const std::vector<GridAxis> &axes,
    const RunOptions &options,
    const std::filesystem::path &output_dir) {
    const auto grid = expand_grid(axes);
    const std::string name = base.value("name", std::string("scenario"));
    std::vector<SweepPoint> points(grid.size());
    std::mutex write_mutex;
    RunOptions point_options = options;
    point_options.threads = 1;

    parallel_for(grid.size(), options.threads, [&](std::size_t i) {
        SweepPoint &pt = points[i];
        pt.index = i;
        pt.overrides = nlohmann::json::object();
        try {
            nlohmann::json doc = base;
            for (const auto &[path, value] : grid[i]) {
                set_path(doc, path, value);
                pt.overrides[path] = value;
            }
            const ScenarioConfig cfg = parse_scenario(doc);
            RunResult result = run_scenario(cfg, point_options);
            result.metadata["sweep"] = {{"index", i}, {"overrides", pt.overrides}};
            const std::string stem = grid.size() == 1 && axes.empty()
                                         ? cfg.output_path
                                         : cfg.output_path + "_p" + std::to_string(i);
            std::lock_guard lock(write_mutex);
            pt.csv = write_result(result, output_dir, stem);
            pt.ok = true;
        } catch (const std::exception &e) {
            pt.ok = false;
            pt.exit_code = exit_code_for(e);
            pt.error = e.what();
        }
    });

    nlohmann::json summary = {{"name", name}, {"points", nlohmann::json::array()}};
    for (const SweepPoint &pt : points) {
        summary["points"].push_back({{"index", pt.index},
                                     {"overrides", pt.overrides},
                                     {"ok", pt.ok},
                                     {"exit_code", pt.exit_code},
                                     {"error", pt.error},
                                     {"csv", pt.csv.string()}});
    }
    std::filesystem::create_directories(output_dir);
    std::ofstream(output_dir / (name + "_sweep.json")) << summary.dump(2) << '\n';
    return points;
}

}  // namespace clusterlab::cli

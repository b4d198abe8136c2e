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

#ifndef CLUSTERLAB_TOOLS_SWEEP_H_
#define CLUSTERLAB_TOOLS_SWEEP_H_

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "runner.h"

namespace clusterlab::cli {

/// One --grid flag: dotted paths varied together (zipped).
struct GridAxis {
    std::vector<std::string> paths;
    /// values[i][p] is the value of paths[p] at point i.
    std::vector<std::vector<nlohmann::json>> values;
};

/// Parses "a.b=[1,2,3]" or "a.b,c.d=[[1,2],[3,4]]".
GridAxis parse_grid(const std::string &spec);

/// Cartesian product across axes, first axis slowest. Each point is a list
/// of (path, value) overrides. No axes gives one empty point.
std::vector<std::vector<std::pair<std::string, nlohmann::json>>> expand_grid(const std::vector<GridAxis> &axes);

struct SweepPoint {
    std::size_t index = 0;
    nlohmann::json overrides;
    bool ok = false;
    int exit_code = 0;
    std::string error;
    std::filesystem::path csv;
};

/// Runs every grid point on `options.threads` workers (each point single
/// threaded) and writes one result per point plus <name>_sweep.json.
/// Failures are recorded per point.
std::vector<SweepPoint> run_sweep(
    const nlohmann::json &base,
    const std::vector<GridAxis> &axes,
    const RunOptions &options,
    const std::filesystem::path &output_dir);

/// Exit code for an exception escaping a run: 2 config, 3 convergence,
/// 4 resource cap, 1 otherwise.
int exit_code_for(const std::exception &e);

}  // namespace clusterlab::cli

#endif  // CLUSTERLAB_TOOLS_SWEEP_H_

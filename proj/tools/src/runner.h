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

#ifndef CLUSTERLAB_TOOLS_RUNNER_H_
#define CLUSTERLAB_TOOLS_RUNNER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.h"

namespace clusterlab::cli {

enum class OutputTimeUnit { kInvJ, kSeconds };

struct RunOptions {
    std::size_t threads = 1;
    OutputTimeUnit time_units = OutputTimeUnit::kInvJ;
    std::uint64_t max_dimension = 1'000'000;
    std::uint64_t max_nonzeros = 2'000'000;
};

/// One CSV line.
struct Row {
    double time = 0.0;
    std::string observable;
    std::optional<std::size_t> site;
    double value = 0.0;
    double imag_value = 0.0;
};

struct RunResult {
    std::vector<Row> rows;
    nlohmann::json metadata;
};

inline constexpr const char *kCsvHeader = "time,observable,site,value,imag_value";

/// Throws ResourceLimitError with the size estimate when any Hilbert space
/// of the scenario exceeds the caps, and ConfigError when seconds are
/// requested without J in Hz.
void check_resources(const ScenarioConfig &config, const RunOptions &options);

/// Samples every observable on the time grid. Rows are ordered by time,
/// then by observable order in the config, then by site, independently of
/// the thread count. Independent samples run in parallel; the plain
/// protocol steps sequentially through the grid.
RunResult run_scenario(const ScenarioConfig &config, const RunOptions &options);

/// Writes <dir>/<stem>.csv and <dir>/<stem>.meta.json; returns the CSV path.
std::filesystem::path write_result(
    const RunResult &result, const std::filesystem::path &dir, const std::string &stem);

std::string format_csv_row(const Row &row);

}  // namespace clusterlab::cli

#endif  // CLUSTERLAB_TOOLS_RUNNER_H_

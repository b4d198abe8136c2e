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

#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "clusterlab/errors.h"
#include "clusterlab/observables.h"
#include "config.h"
#include "runner.h"
#include "sweep.h"

namespace clusterlab::cli {
namespace {

using nlohmann::json;

json small_scenario() {
    return json::parse(R"({
      "name": "unit",
      "geometry": {"extents": [4], "boundary": "periodic"},
      "model": {"kind": "superexchange", "U_over_J": 40, "Omega_over_J": 50},
      "protocol": {"type": "echo_ising"},
      "times": {"t_final": 1.0, "samples": 5},
      "observables": [
        {"type": "sx_collective"},
        {"type": "stabilizer", "sites": "all"},
        {"type": "fidelity_vs", "reference": {"kind": "ising", "protocol": "echo_ising"}}
      ]
    })");
}

std::filesystem::path temp_dir(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / ("clusterlab_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

TEST(Config, ParsesDefaults) {
    const ScenarioConfig cfg = parse_scenario(small_scenario());
    EXPECT_EQ(cfg.name, "unit");
    EXPECT_EQ(cfg.output_path, "unit");
    EXPECT_EQ(cfg.geometry.site_count(), 4u);
    EXPECT_EQ(cfg.protocol, ProtocolKind::kEchoIsing);
    EXPECT_EQ(cfg.params.J, 1.0);
    EXPECT_NEAR(cfg.t_final, cluster_time(cfg.params), 1e-12);
    EXPECT_EQ(cfg.time_grid().size(), 5u);
    EXPECT_EQ(cfg.time_grid().front(), 0.0);
    EXPECT_NEAR(cfg.time_grid().back(), cfg.t_final, 1e-15);
}

TEST(Config, OutputPathIsAStem) {
    json doc = small_scenario();
    doc["output"] = {{"path", "named.csv"}};
    EXPECT_EQ(parse_scenario(doc).output_path, "named");
}

TEST(Config, UnknownKeysAreErrors) {
    json doc = small_scenario();
    doc["extra"] = 1;
    EXPECT_THROW(parse_scenario(doc), ConfigError);
    doc = small_scenario();
    doc["model"]["U"] = 1;
    EXPECT_THROW(parse_scenario(doc), ConfigError);
    doc = small_scenario();
    doc["observables"][0]["color"] = "red";
    EXPECT_THROW(parse_scenario(doc), ConfigError);
}

TEST(Config, RejectsInconsistentScenarios) {
    json doc = small_scenario();
    doc["observables"][1]["sites"] = json::array({0, 7});
    EXPECT_THROW(parse_scenario(doc), ConfigError);

    doc = small_scenario();
    doc["initial_state"] = {{"type", "vacancies"}, {"sites", {1}}};
    EXPECT_THROW(parse_scenario(doc), ConfigError);  // spin-1/2 models have no holes

    doc = small_scenario();
    doc["protocol"] = {{"type", "time_reversal"}};
    doc["model"]["Omega_over_J"] = 60;
    EXPECT_THROW(parse_scenario(doc), ConfigError);  // Omega >= sqrt(2) U

    doc = small_scenario();
    doc["observables"].push_back({{"type", "otoc"}});
    EXPECT_THROW(parse_scenario(doc), ConfigError);

    doc = small_scenario();
    doc["model"]["kind"] = "heisenberg";
    EXPECT_THROW(parse_scenario(doc), ConfigError);

    doc = small_scenario();
    doc["times"]["units"] = "seconds";
    EXPECT_THROW(parse_scenario(doc), ConfigError);
}

TEST(Config, HashIsStableAndSensitive) {
    const json a = small_scenario();
    json b = a;
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 16u);
    set_path(b, "model.U_over_J", 41);
    EXPECT_NE(config_hash(a), config_hash(b));
    EXPECT_EQ(b["model"]["U_over_J"], 41);
}

TEST(Config, SecondsFollowHertzJ) {
    json doc = small_scenario();
    doc["model"]["J"] = 22.0;
    doc["model"]["J_units"] = "hz";
    doc["times"] = {{"t_final", 0.05}, {"units", "seconds"}, {"samples", 2}};
    const ScenarioConfig cfg = parse_scenario(doc);
    EXPECT_NEAR(cfg.t_final, 0.05 * 2 * std::numbers::pi * 22.0, 1e-12);
    ASSERT_TRUE(cfg.angular_j_per_second());
}

TEST(Grid, ParsesSingleAndZippedAxes) {
    const GridAxis a = parse_grid("model.U_over_J=[50,100,200]");
    ASSERT_EQ(a.paths.size(), 1u);
    EXPECT_EQ(a.values.size(), 3u);
    const GridAxis b = parse_grid("model.U_over_J,model.Omega_over_J=[[50,60],[100,120]]");
    ASSERT_EQ(b.paths.size(), 2u);
    ASSERT_EQ(b.values.size(), 2u);
    EXPECT_EQ(b.values[1][1], 120);
    EXPECT_THROW(parse_grid("model.U_over_J"), ConfigError);
    EXPECT_THROW(parse_grid("a,b=[[1],[2,3]]"), ConfigError);
}

TEST(Grid, ExpansionOrderAndEmptyGrid) {
    EXPECT_EQ(expand_grid({}).size(), 1u);
    EXPECT_TRUE(expand_grid({}).front().empty());
    const auto points = expand_grid({parse_grid("a=[1,2]"), parse_grid("b=[10,20,30]")});
    ASSERT_EQ(points.size(), 6u);
    EXPECT_EQ(points[0][0].second, 1);
    EXPECT_EQ(points[0][1].second, 10);
    EXPECT_EQ(points[1][1].second, 20);
    EXPECT_EQ(points[3][0].second, 2);
}

TEST(Output, CsvHeaderAndRows) {
    EXPECT_STREQ(kCsvHeader, "time,observable,site,value,imag_value");
    EXPECT_EQ(format_csv_row({0.5, "sx_collective", std::nullopt, -2.0, 0.0}), "0.5,sx_collective,,-2,0");
    EXPECT_EQ(format_csv_row({1.0, "stabilizer", 3, 0.25, 0.0}), "1,stabilizer,3,0.25,0");
}

TEST(Runner, RowsAreOrderedAndDeterministic) {
    const ScenarioConfig cfg = parse_scenario(small_scenario());
    RunOptions serial;
    RunOptions parallel;
    parallel.threads = 4;
    const RunResult a = run_scenario(cfg, serial);
    const RunResult b = run_scenario(cfg, parallel);
    ASSERT_EQ(a.rows.size(), 5u * (1 + 4 + 1));
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].time, b.rows[i].time);
        EXPECT_EQ(a.rows[i].observable, b.rows[i].observable);
        EXPECT_EQ(a.rows[i].site, b.rows[i].site);
        EXPECT_LE(std::abs(a.rows[i].value - b.rows[i].value), 1e-12);
    }
    EXPECT_EQ(a.rows.front().observable, "sx_collective");
    EXPECT_NEAR(a.rows.front().value, -2.0, 1e-12);
    EXPECT_EQ(a.rows[5].observable, "fidelity_vs_ising");
    EXPECT_NEAR(a.rows[5].value, 1.0, 1e-10);
    EXPECT_EQ(a.metadata["config_hash"], config_hash(small_scenario()));
    EXPECT_TRUE(a.metadata.contains("residuals"));
}

TEST(Runner, PlainProtocolMatchesDirectEvolution) {
    json doc = small_scenario();
    doc["protocol"] = {{"type", "plain"}};
    doc["observables"] = json::array({{{"type", "sx_collective"}}});
    doc["times"] = {{"t_final", 3.0}, {"units", "invJ"}, {"samples", 4}};
    const ScenarioConfig cfg = parse_scenario(doc);
    const RunResult r = run_scenario(cfg, {});
    Model m(ModelKind::kSuperexchange, cfg.geometry);
    const StateVector psi = propagate(*m.hamiltonian(cfg.params), m.initial_state(), 3.0);
    EXPECT_NEAR(r.rows.back().value, collective_spin(psi, Axis::kX), 1e-9);
    EXPECT_EQ(r.rows.back().time, 3.0);
}

TEST(Runner, ResourceCapReportsEstimate) {
    json doc = small_scenario();
    doc["geometry"]["extents"] = json::array({4, 4});
    doc["model"]["kind"] = "fermi_hubbard_gauged";
    doc["observables"] = json::array({{{"type", "sx_collective"}}});
    const ScenarioConfig cfg = parse_scenario(doc);
    try {
        check_resources(cfg, {});
        FAIL() << "expected ResourceLimitError";
    } catch (const ResourceLimitError &e) {
        EXPECT_NE(std::string(e.what()).find("dimension"), std::string::npos) << e.what();
        EXPECT_EQ(exit_code_for(e), 4);
    }
}

TEST(Runner, SecondsOutputNeedsHertz) {
    RunOptions opts;
    opts.time_units = OutputTimeUnit::kSeconds;
    EXPECT_THROW(check_resources(parse_scenario(small_scenario()), opts), ConfigError);
}

TEST(Runner, WritesCsvAndMetadata) {
    const auto dir = temp_dir("write");
    const RunResult r = run_scenario(parse_scenario(small_scenario()), {});
    const auto csv = write_result(r, dir, "unit");
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, kCsvHeader);
    EXPECT_TRUE(std::filesystem::exists(dir / "unit.meta.json"));
}

TEST(ExitCodes, Mapping) {
    EXPECT_EQ(exit_code_for(ConfigError("x")), 2);
    EXPECT_EQ(exit_code_for(ConvergenceError("x", 1.0)), 3);
    EXPECT_EQ(exit_code_for(ResourceLimitError("x")), 4);
    EXPECT_EQ(exit_code_for(std::runtime_error("x")), 1);
}

TEST(Sweep, RecordsPartialFailures) {
    const auto dir = temp_dir("sweep");
    json base = small_scenario();
    base["observables"] = json::array({{{"type", "sx_collective"}}});
    RunOptions opts;
    opts.threads = 2;
    const auto points = run_sweep(base, {parse_grid("model.Omega_over_J=[50,40,60]")}, opts, dir);
    ASSERT_EQ(points.size(), 3u);
    EXPECT_TRUE(points[0].ok);
    EXPECT_FALSE(points[1].ok);  // Omega = U
    EXPECT_TRUE(points[2].ok);
    EXPECT_TRUE(std::filesystem::exists(points[0].csv));
    EXPECT_TRUE(std::filesystem::exists(dir / "unit_sweep.json"));
}

TEST(Scenarios, CannedConfigsParse) {
    const std::filesystem::path dir = CLUSTERLAB_TEST_SCENARIOS_DIR;
    std::set<std::string> names;
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") {
            continue;
        }
        const ScenarioConfig cfg = parse_scenario(load_json(entry.path()));
        EXPECT_NO_THROW(check_resources(cfg, {})) << entry.path();
        names.insert(entry.path().stem().string());
    }
    for (const char *required : {"fig2c", "fig2d", "fig2e", "fig3a", "fig3b", "fig4", "appendixB", "appendixC"}) {
        EXPECT_TRUE(names.count(required)) << required;
    }
}

}  // namespace
}  // namespace clusterlab::cli

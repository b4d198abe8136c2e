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

#ifndef CLUSTERLAB_TOOLS_CONFIG_H_
#define CLUSTERLAB_TOOLS_CONFIG_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusterlab/hamiltonian.h"
#include "clusterlab/lattice.h"
#include "clusterlab/model.h"
#include "clusterlab/propagate.h"

namespace clusterlab::cli {

/// Invalid or inconsistent scenario configuration (exit code 2).
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class ProtocolKind { kPlain, kEchoIsing, kTimeReversal, kOtoc };
enum class JUnits { kDimensionless, kHertz };

enum class ObservableKind {
    kCollectiveSpin,    ///< "sx_collective" (axis selectable)
    kSymmetrizedYZ,     ///< "syz_symmetrized": <S^y S^z + h.c.>
    kStabilizer,        ///< per site
    kFidelityVs,        ///< against a reference run
    kHoleDensity,       ///< per site
    kClusterEstimate,   ///< time_reversal only
    kOtoc,              ///< otoc protocol only
};

struct ObservableSpec {
    ObservableKind kind = ObservableKind::kCollectiveSpin;
    Axis axis = Axis::kX;
    /// Region or site list; empty means every site.
    std::vector<std::size_t> sites;
    ModelKind reference_model = ModelKind::kIsing;
    ProtocolKind reference_protocol = ProtocolKind::kPlain;
};

/// Validated scenario. Energies are in units of J and times in 1/J.
struct ScenarioConfig {
    std::string name;
    std::string description;
    std::string notes;

    LatticeGeometry geometry = LatticeGeometry::chain(1, Boundary::kOpen);
    ModelKind model = ModelKind::kSuperexchange;
    double J = 1.0;
    JUnits J_units = JUnits::kDimensionless;
    HubbardParams params;
    std::vector<std::size_t> vacancies;

    ProtocolKind protocol = ProtocolKind::kPlain;
    double otoc_theta = 0.0;
    /// Backward leg of time_reversal, in 1/J; defaults to the cluster time.
    double t_backward = 0.0;

    double t_final = 0.0;
    std::size_t samples = 200;
    std::vector<ObservableSpec> observables;
    PropagationOptions propagation;

    /// Output file stem; a trailing ".csv" in the config is dropped.
    std::string output_path;
    std::string output_format = "csv";

    /// The parsed document, echoed into result metadata.
    nlohmann::json source;

    /// Uniform grid on [0, t_final]; a single sample sits at t_final.
    std::vector<double> time_grid() const;
    /// Angular J in rad/s when J is given in Hz.
    std::optional<double> angular_j_per_second() const;
};

std::string_view to_string(ProtocolKind kind);

/// Parses and validates. Unknown keys, wrong types, out-of-range sites and
/// model/protocol mismatches raise ConfigError.
ScenarioConfig parse_scenario(const nlohmann::json &document);

/// Reads a JSON file; parse failures raise ConfigError.
nlohmann::json load_json(const std::filesystem::path &path);

/// Sets a dotted path ("model.U_over_J") inside a document, creating
/// intermediate objects.
void set_path(nlohmann::json &document, const std::string &dotted, const nlohmann::json &value);

/// FNV-1a 64-bit hash of the canonical serialization.
std::string config_hash(const nlohmann::json &document);

}  // namespace clusterlab::cli

#endif  // CLUSTERLAB_TOOLS_CONFIG_H_

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

#include "config.h"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace clusterlab::cli {

namespace {

using nlohmann::json;

/// Reads keys from one JSON object; leftover keys are errors.
class Fields {
   public:
    Fields(const json &object, std::string where) : object_(object), where_(std::move(where)) {
        if (!object_.is_object()) {
            throw ConfigError(where_ + ": expected an object");
        }
    }

    bool has(const std::string &key) {
        used_.insert(key);
        return object_.contains(key);
    }

    const json &get(const std::string &key) {
        used_.insert(key);
        if (!object_.contains(key)) {
            throw ConfigError(where_ + ": missing required key '" + key + "'");
        }
        return object_.at(key);
    }

    double number(const std::string &key, std::optional<double> fallback = std::nullopt) {
        if (!has(key)) {
            if (fallback) {
                return *fallback;
            }
            return get(key).get<double>();
        }
        const json &v = object_.at(key);
        if (!v.is_number()) {
            throw ConfigError(path(key) + ": expected a number");
        }
        const double x = v.get<double>();
        if (!std::isfinite(x)) {
            throw ConfigError(path(key) + ": must be finite");
        }
        return x;
    }

    std::string text(const std::string &key, std::optional<std::string> fallback = std::nullopt) {
        if (!has(key)) {
            if (fallback) {
                return *fallback;
            }
            return get(key).get<std::string>();
        }
        const json &v = object_.at(key);
        if (!v.is_string()) {
            throw ConfigError(path(key) + ": expected a string");
        }
        return v.get<std::string>();
    }

    std::size_t count(const std::string &key, std::optional<std::size_t> fallback = std::nullopt) {
        if (!has(key)) {
            if (fallback) {
                return *fallback;
            }
            (void)get(key);
        }
        const json &v = object_.at(key);
        if (!v.is_number_integer() || v.get<long long>() < 0) {
            throw ConfigError(path(key) + ": expected a non-negative integer");
        }
        return v.get<std::size_t>();
    }

    std::string path(const std::string &key) const {
        return where_ + "." + key;
    }

    void finish() const {
        for (const auto &[key, value] : object_.items()) {
            if (!used_.count(key)) {
                throw ConfigError(where_ + ": unknown key '" + key + "'");
            }
        }
    }

   private:
    const json &object_;
    std::string where_;
    std::set<std::string> used_;
};

std::vector<std::size_t> site_list(const json &v, const std::string &where, std::size_t sites) {
    if (v.is_string() && v.get<std::string>() == "all") {
        return {};
    }
    if (!v.is_array()) {
        throw ConfigError(where + ": expected a list of site indices or \"all\"");
    }
    std::vector<std::size_t> out;
    for (const json &s : v) {
        if (!s.is_number_integer() || s.get<long long>() < 0 || s.get<std::size_t>() >= sites) {
            throw ConfigError(where + ": site " + s.dump() + " is outside the lattice of " +
                              std::to_string(sites) + " sites");
        }
        out.push_back(s.get<std::size_t>());
    }
    std::set<std::size_t> unique(out.begin(), out.end());
    if (unique.size() != out.size()) {
        throw ConfigError(where + ": duplicate sites");
    }
    return out;
}

Axis parse_axis(const std::string &s, const std::string &where) {
    if (s == "x") {
        return Axis::kX;
    }
    if (s == "y") {
        return Axis::kY;
    }
    if (s == "z") {
        return Axis::kZ;
    }
    throw ConfigError(where + ": axis must be one of x, y, z");
}

ProtocolKind parse_protocol_kind(const std::string &s, const std::string &where) {
    if (s == "plain") {
        return ProtocolKind::kPlain;
    }
    if (s == "echo_ising") {
        return ProtocolKind::kEchoIsing;
    }
    if (s == "time_reversal") {
        return ProtocolKind::kTimeReversal;
    }
    if (s == "otoc") {
        return ProtocolKind::kOtoc;
    }
    throw ConfigError(where + ": unknown protocol '" + s + "'");
}

ModelKind parse_model(const std::string &s, const std::string &where) {
    auto kind = parse_model_kind(s);
    if (!kind) {
        throw ConfigError(where + ": unknown model kind '" + s + "'");
    }
    return *kind;
}

void parse_geometry(const json &node, ScenarioConfig &cfg) {
    Fields f(node, "geometry");
    const json &ext = f.get("extents");
    if (!ext.is_array() || ext.empty() || ext.size() > 3) {
        throw ConfigError("geometry.extents: expected 1 to 3 positive integers");
    }
    std::array<int, 3> extents{1, 1, 1};
    for (std::size_t a = 0; a < ext.size(); ++a) {
        if (!ext[a].is_number_integer() || ext[a].get<long long>() < 1 || ext[a].get<long long>() > 32) {
            throw ConfigError("geometry.extents: entries must be integers in [1, 32]");
        }
        extents[a] = ext[a].get<int>();
    }
    std::array<bool, 3> tunneling{false, false, false};
    if (f.has("tunneling_axes")) {
        const json &axes = f.get("tunneling_axes");
        if (!axes.is_array()) {
            throw ConfigError("geometry.tunneling_axes: expected a list such as [\"x\", \"y\"]");
        }
        for (const json &a : axes) {
            if (!a.is_string()) {
                throw ConfigError("geometry.tunneling_axes: entries must be strings");
            }
            tunneling[static_cast<int>(parse_axis(a.get<std::string>(), "geometry.tunneling_axes"))] = true;
        }
    } else {
        for (std::size_t a = 0; a < ext.size(); ++a) {
            tunneling[a] = true;
        }
    }
    std::array<Boundary, 3> boundaries{Boundary::kOpen, Boundary::kOpen, Boundary::kOpen};
    const json &b = f.get("boundary");
    auto parse_boundary = [](const json &v) {
        if (v.is_string() && v.get<std::string>() == "open") {
            return Boundary::kOpen;
        }
        if (v.is_string() && v.get<std::string>() == "periodic") {
            return Boundary::kPeriodic;
        }
        throw ConfigError("geometry.boundary: entries must be \"open\" or \"periodic\"");
    };
    if (b.is_string()) {
        boundaries.fill(parse_boundary(b));
    } else if (b.is_array() && b.size() == ext.size()) {
        for (std::size_t a = 0; a < b.size(); ++a) {
            boundaries[a] = parse_boundary(b[a]);
        }
    } else {
        throw ConfigError("geometry.boundary: give one string or one entry per extent");
    }
    f.finish();
    try {
        cfg.geometry = LatticeGeometry(extents, tunneling, boundaries);
    } catch (const std::exception &e) {
        throw ConfigError(std::string("geometry: ") + e.what());
    }
}

void parse_model_block(const json &node, ScenarioConfig &cfg) {
    Fields f(node, "model");
    cfg.model = parse_model(f.text("kind"), "model.kind");
    cfg.J = f.number("J", 1.0);
    const std::string units = f.text("J_units", "dimensionless");
    if (units == "dimensionless") {
        cfg.J_units = JUnits::kDimensionless;
    } else if (units == "hz") {
        cfg.J_units = JUnits::kHertz;
    } else {
        throw ConfigError("model.J_units: expected \"dimensionless\" or \"hz\"");
    }
    if (!(cfg.J > 0.0)) {
        throw ConfigError("model.J: must be positive");
    }
    cfg.params.J = 1.0;
    cfg.params.U = f.number("U_over_J");
    cfg.params.Omega = f.number("Omega_over_J");
    f.finish();
    try {
        validate(cfg.params);
    } catch (const std::exception &e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    if (cfg.model != ModelKind::kFermiHubbardGauged && cfg.model != ModelKind::kFermiHubbardLiteral &&
        cfg.params.Omega == cfg.params.U) {
        throw ConfigError("model: superexchange-derived models diverge at Omega = U");
    }
}

void parse_initial_state(const json &node, ScenarioConfig &cfg) {
    Fields f(node, "initial_state");
    const std::string type = f.text("type");
    if (type == "half_filling") {
        cfg.vacancies.clear();
    } else if (type == "vacancies") {
        cfg.vacancies = site_list(f.get("sites"), "initial_state.sites", cfg.geometry.site_count());
        if (cfg.vacancies.empty()) {
            throw ConfigError("initial_state.sites: list at least one vacancy or use half_filling");
        }
    } else {
        throw ConfigError("initial_state.type: expected \"half_filling\" or \"vacancies\"");
    }
    f.finish();
}

double convert_time(double value, const std::string &units, const ScenarioConfig &cfg, const std::string &where) {
    if (units == "invJ") {
        return value;
    }
    if (units == "cluster_time") {
        try {
            return value * cluster_time(cfg.params);
        } catch (const std::exception &e) {
            throw ConfigError(where + ": cluster time undefined: " + e.what());
        }
    }
    if (units == "seconds") {
        auto scale = cfg.angular_j_per_second();
        if (!scale) {
            throw ConfigError(where + ": seconds require model.J_units = \"hz\"");
        }
        return value * *scale;  // seconds times rad/s
    }
    throw ConfigError(where + ": units must be invJ, cluster_time or seconds");
}

void parse_protocol(const json &node, ScenarioConfig &cfg) {
    Fields f(node, "protocol");
    cfg.protocol = parse_protocol_kind(f.text("type"), "protocol.type");
    if (cfg.protocol == ProtocolKind::kOtoc) {
        cfg.otoc_theta = f.number("theta");
    }
    if (cfg.protocol == ProtocolKind::kTimeReversal) {
        const std::string units = f.text("t_backward_units", "cluster_time");
        cfg.t_backward = convert_time(f.number("t_backward", 1.0), units, cfg, "protocol.t_backward");
        if (cfg.t_backward < 0.0) {
            throw ConfigError("protocol.t_backward: must be non-negative");
        }
    }
    f.finish();
    if (cfg.protocol == ProtocolKind::kTimeReversal || cfg.protocol == ProtocolKind::kOtoc) {
        if (!(2.0 * cfg.params.U * cfg.params.U - cfg.params.Omega * cfg.params.Omega > 0.0)) {
            throw ConfigError("protocol: the sign-flip quench needs Omega < sqrt(2) U");
        }
    }
}

void parse_times(const json &node, ScenarioConfig &cfg) {
    Fields f(node, "times");
    const std::string units = f.text("units", "cluster_time");
    cfg.t_final = convert_time(f.number("t_final", 2.0), units, cfg, "times.t_final");
    if (cfg.t_final < 0.0) {
        throw ConfigError("times.t_final: must be non-negative");
    }
    cfg.samples = f.count("samples", 200);
    if (cfg.samples < 1 || cfg.samples > 100000) {
        throw ConfigError("times.samples: must lie in [1, 100000]");
    }
    f.finish();
}

ObservableSpec parse_observable(const json &node, const ScenarioConfig &cfg, std::size_t i) {
    const std::string where = "observables[" + std::to_string(i) + "]";
    Fields f(node, where);
    const std::string type = f.text("type");
    const std::size_t sites = cfg.geometry.site_count();
    ObservableSpec o;
    if (type == "sx_collective" || type == "collective_spin") {
        o.kind = ObservableKind::kCollectiveSpin;
        o.axis = parse_axis(f.text("axis", "x"), where + ".axis");
        if (f.has("region")) {
            o.sites = site_list(f.get("region"), where + ".region", sites);
        }
    } else if (type == "syz_symmetrized") {
        o.kind = ObservableKind::kSymmetrizedYZ;
    } else if (type == "stabilizer") {
        o.kind = ObservableKind::kStabilizer;
        o.sites = site_list(f.get("sites"), where + ".sites", sites);
    } else if (type == "fidelity_vs") {
        o.kind = ObservableKind::kFidelityVs;
        Fields r(f.get("reference"), where + ".reference");
        o.reference_model = parse_model(r.text("kind"), where + ".reference.kind");
        o.reference_protocol = parse_protocol_kind(r.text("protocol", "plain"), where + ".reference.protocol");
        if (o.reference_protocol != ProtocolKind::kPlain && o.reference_protocol != ProtocolKind::kEchoIsing) {
            throw ConfigError(where + ".reference.protocol: must be plain or echo_ising");
        }
        r.finish();
    } else if (type == "hole_density") {
        o.kind = ObservableKind::kHoleDensity;
        o.sites = site_list(f.get("sites"), where + ".sites", sites);
    } else if (type == "cluster_estimate") {
        o.kind = ObservableKind::kClusterEstimate;
        if (f.has("region")) {
            o.sites = site_list(f.get("region"), where + ".region", sites);
        }
        if (cfg.protocol != ProtocolKind::kTimeReversal) {
            throw ConfigError(where + ": cluster_estimate needs the time_reversal protocol");
        }
    } else if (type == "otoc") {
        o.kind = ObservableKind::kOtoc;
    } else {
        throw ConfigError(where + ".type: unknown observable '" + type + "'");
    }
    f.finish();
    if ((cfg.protocol == ProtocolKind::kOtoc) != (o.kind == ObservableKind::kOtoc)) {
        throw ConfigError(where + ": the otoc observable and the otoc protocol go together");
    }
    return o;
}

}  // namespace

std::vector<double> ScenarioConfig::time_grid() const {
    if (samples == 1) {
        return {t_final};
    }
    std::vector<double> grid(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        grid[i] = t_final * static_cast<double>(i) / static_cast<double>(samples - 1);
    }
    return grid;
}

std::optional<double> ScenarioConfig::angular_j_per_second() const {
    if (J_units != JUnits::kHertz) {
        return std::nullopt;
    }
    return 2.0 * std::numbers::pi * J;
}

std::string_view to_string(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::kPlain:
            return "plain";
        case ProtocolKind::kEchoIsing:
            return "echo_ising";
        case ProtocolKind::kTimeReversal:
            return "time_reversal";
        case ProtocolKind::kOtoc:
            return "otoc";
    }
    return "unknown";
}

ScenarioConfig parse_scenario(const json &document) {
    ScenarioConfig cfg;
    cfg.source = document;
    Fields f(document, "config");
    cfg.name = f.text("name", "scenario");
    cfg.description = f.text("description", "");
    cfg.notes = f.text("notes", "");
    (void)f.has("$schema");
    parse_geometry(f.get("geometry"), cfg);
    parse_model_block(f.get("model"), cfg);
    parse_initial_state(f.has("initial_state") ? f.get("initial_state") : json{{"type", "half_filling"}}, cfg);
    parse_protocol(f.has("protocol") ? f.get("protocol") : json{{"type", "plain"}}, cfg);
    parse_times(f.has("times") ? f.get("times") : json::object(), cfg);

    const json &obs = f.get("observables");
    if (!obs.is_array() || obs.empty()) {
        throw ConfigError("observables: expected a non-empty list");
    }
    for (std::size_t i = 0; i < obs.size(); ++i) {
        cfg.observables.push_back(parse_observable(obs[i], cfg, i));
    }

    if (f.has("propagation")) {
        Fields p(f.get("propagation"), "propagation");
        cfg.propagation.tolerance = p.number("tolerance", cfg.propagation.tolerance);
        cfg.propagation.krylov_dimension = p.count("krylov_dimension", cfg.propagation.krylov_dimension);
        p.finish();
        if (!(cfg.propagation.tolerance > 0.0) || cfg.propagation.krylov_dimension < 2) {
            throw ConfigError("propagation: tolerance must be positive and krylov_dimension >= 2");
        }
    }
    if (f.has("output")) {
        Fields o(f.get("output"), "output");
        cfg.output_path = o.text("path", "");
        cfg.output_format = o.text("format", "csv");
        o.finish();
        if (cfg.output_format != "csv") {
            throw ConfigError("output.format: only \"csv\" is supported");
        }
    }
    f.finish();
    if (cfg.output_path.empty()) {
        cfg.output_path = cfg.name;
    }
    // The path is a stem; ".csv" and ".meta.json" are appended on write.
    if (cfg.output_path.ends_with(".csv")) {
        cfg.output_path.resize(cfg.output_path.size() - 4);
    }

    try {
        (void)Model::estimate(cfg.model, cfg.geometry, cfg.vacancies.size());
        for (const ObservableSpec &o : cfg.observables) {
            if (o.kind == ObservableKind::kFidelityVs) {
                (void)Model::estimate(o.reference_model, cfg.geometry, cfg.vacancies.size());
            }
        }
        if (cfg.model == ModelKind::kFermiHubbardLiteral) {
            for (std::size_t s = 0; s < cfg.geometry.site_count(); ++s) {
                (void)cfg.geometry.stagger_sign(s);
            }
        }
    } catch (const std::exception &e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    return cfg;
}

nlohmann::json load_json(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void set_path(nlohmann::json &document, const std::string &dotted, const nlohmann::json &value) {
    nlohmann::json *node = &document;
    std::stringstream ss(dotted);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) {
        if (part.empty()) {
            throw ConfigError("empty component in parameter path '" + dotted + "'");
        }
        parts.push_back(part);
    }
    if (parts.empty()) {
        throw ConfigError("empty parameter path");
    }
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->is_object()) {
            throw ConfigError("parameter path '" + dotted + "' crosses a non-object");
        }
        node = &(*node)[parts[i]];
    }
    if (!node->is_object() && !node->is_null()) {
        throw ConfigError("parameter path '" + dotted + "' crosses a non-object");
    }
    (*node)[parts.back()] = value;
}

std::string config_hash(const nlohmann::json &document) {
    const std::string text = document.dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

}  // namespace clusterlab::cli

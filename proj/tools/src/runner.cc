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

#include "runner.h"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <mutex>

#include "clusterlab/errors.h"
#include "clusterlab/model.h"
#include "clusterlab/observables.h"
#include "clusterlab/protocol.h"
#include "thread_pool.h"

#ifndef CLUSTERLAB_VERSION
#define CLUSTERLAB_VERSION "unknown"
#endif

namespace clusterlab::cli {

namespace {

using nlohmann::json;

/// Time-dependent state of one model under one protocol. Plain evolution is
/// advanced incrementally when queried at increasing times.
class Track {
   public:
    Track(const Model &model, ProtocolKind protocol, const ScenarioConfig &cfg)
        : model_(model), protocol_(protocol), cfg_(cfg), psi0_(model.initial_state()) {
    }

    const StateVector &at(double t, RunReport &report) {
        if (protocol_ == ProtocolKind::kPlain && current_ && t >= t_current_) {
            const auto h = model_.hamiltonian(cfg_.params);
            report.add(propagate_in_place(*h, current_->mutable_amplitudes(), t - t_current_, cfg_.propagation));
        } else {
            current_ = fresh(t, report);
        }
        t_current_ = t;
        return *current_;
    }

   private:
    StateVector fresh(double t, RunReport &report) const {
        switch (protocol_) {
            case ProtocolKind::kPlain: {
                const auto h = model_.hamiltonian(cfg_.params);
                PropagationReport r;
                StateVector out = propagate(*h, psi0_, t, cfg_.propagation, &r);
                report.add(r);
                return out;
            }
            case ProtocolKind::kEchoIsing:
                return run_echo_ising(model_, cfg_.params, psi0_, t, cfg_.propagation, &report);
            case ProtocolKind::kTimeReversal:
                return run_time_reversal(model_, cfg_.params, psi0_, t, cfg_.t_backward, cfg_.propagation, &report);
            case ProtocolKind::kOtoc:
                break;
        }
        throw std::logic_error("otoc protocol has no single state");
    }

    const Model &model_;
    ProtocolKind protocol_;
    const ScenarioConfig &cfg_;
    StateVector psi0_;
    std::optional<StateVector> current_;
    double t_current_ = 0.0;
};

struct Models {
    std::unique_ptr<Model> main;
    // One per observable; null unless the observable is fidelity_vs.
    std::vector<std::unique_ptr<Model>> references;
};

std::vector<std::size_t> sites_or_all(const std::vector<std::size_t> &sites, std::size_t count) {
    if (!sites.empty()) {
        return sites;
    }
    std::vector<std::size_t> all(count);
    for (std::size_t i = 0; i < count; ++i) {
        all[i] = i;
    }
    return all;
}

std::string axis_name(Axis a) {
    return std::string(1, "xyz"[static_cast<int>(a)]);
}

struct SampleOutput {
    std::vector<Row> rows;
    RunReport report;
};

void measure(
    const ScenarioConfig &cfg,
    const StateVector &psi,
    double t,
    const ObservableSpec &o,
    const StateVector *reference,
    std::vector<Row> &rows) {
    const std::size_t sites = cfg.geometry.site_count();
    switch (o.kind) {
        case ObservableKind::kCollectiveSpin:
            rows.push_back({t, "s" + axis_name(o.axis) + "_collective", std::nullopt,
                            collective_spin(psi, o.axis, o.sites), 0.0});
            break;
        case ObservableKind::kSymmetrizedYZ:
            rows.push_back({t, "syz_symmetrized", std::nullopt,
                            symmetrized_collective_correlator(psi, Axis::kY, Axis::kZ), 0.0});
            break;
        case ObservableKind::kStabilizer:
            for (std::size_t s : sites_or_all(o.sites, sites)) {
                rows.push_back({t, "stabilizer", s, stabilizer(psi, cfg.geometry, s), 0.0});
            }
            break;
        case ObservableKind::kFidelityVs:
            rows.push_back({t, "fidelity_vs_" + std::string(to_string(o.reference_model)), std::nullopt,
                            fidelity(psi, *reference), 0.0});
            break;
        case ObservableKind::kHoleDensity:
            for (std::size_t s : sites_or_all(o.sites, sites)) {
                rows.push_back({t, "hole_density", s, hole_density(psi, s), 0.0});
            }
            break;
        case ObservableKind::kClusterEstimate: {
            const auto region = sites_or_all(o.sites, sites);
            const double sx = collective_spin(psi, Axis::kX, region);
            rows.push_back({t, "cluster_estimate", std::nullopt, -2.0 * sx / static_cast<double>(region.size()), 0.0});
            break;
        }
        case ObservableKind::kOtoc:
            break;
    }
}

json params_json(const ScenarioConfig &cfg) {
    json p = {
        {"J", cfg.J},
        {"J_units", cfg.J_units == JUnits::kHertz ? "hz" : "dimensionless"},
        {"U_over_J", cfg.params.U},
        {"Omega_over_J", cfg.params.Omega},
    };
    try {
        p["J_zz_over_J"] = j_zz(cfg.params);
        p["cluster_time_invJ"] = cluster_time(cfg.params);
    } catch (const std::domain_error &) {
        p["J_zz_over_J"] = nullptr;
        p["cluster_time_invJ"] = nullptr;
    }
    return p;
}

}  // namespace

void check_resources(const ScenarioConfig &cfg, const RunOptions &options) {
    if (options.time_units == OutputTimeUnit::kSeconds && !cfg.angular_j_per_second()) {
        throw ConfigError("--time-units seconds requires model.J_units = \"hz\"");
    }
    auto check = [&](ModelKind kind) {
        const SizeEstimate e = Model::estimate(kind, cfg.geometry, cfg.vacancies.size());
        if (e.dimension > options.max_dimension || e.nonzeros > options.max_nonzeros) {
            throw ResourceLimitError(
                std::string(to_string(kind)) + " on " + cfg.geometry.describe() + " with " +
                std::to_string(cfg.vacancies.size()) + " vacancies needs dimension " + std::to_string(e.dimension) +
                " and about " + std::to_string(e.nonzeros) + " stored nonzeros; caps are " +
                std::to_string(options.max_dimension) + " and " + std::to_string(options.max_nonzeros) +
                " (raise with --max-dim / --max-nnz)");
        }
    };
    check(cfg.model);
    for (const ObservableSpec &o : cfg.observables) {
        if (o.kind == ObservableKind::kFidelityVs) {
            check(o.reference_model);
        }
    }
}

RunResult run_scenario(const ScenarioConfig &cfg, const RunOptions &options) {
    check_resources(cfg, options);
    const auto start = std::chrono::steady_clock::now();

    Models models;
    models.main = std::make_unique<Model>(cfg.model, cfg.geometry, cfg.vacancies);
    for (const ObservableSpec &o : cfg.observables) {
        models.references.push_back(
            o.kind == ObservableKind::kFidelityVs
                ? std::make_unique<Model>(o.reference_model, cfg.geometry, cfg.vacancies)
                : nullptr);
    }
    const auto h = models.main->hamiltonian(cfg.params);

    const std::vector<double> grid = cfg.time_grid();
    std::vector<SampleOutput> outputs(grid.size());

    if (cfg.protocol == ProtocolKind::kOtoc) {
        const StateVector psi0 = models.main->initial_state();
        parallel_for(grid.size(), options.threads, [&](std::size_t i) {
            const OtocResult r = otoc(*models.main, cfg.params, psi0, cfg.otoc_theta, grid[i], cfg.propagation);
            const cplx rhs = r.eigenvalue * r.rotated_spin;
            outputs[i].rows = {
                {grid[i], "otoc", std::nullopt, r.correlator.real(), r.correlator.imag()},
                {grid[i], "otoc_eigen_rhs", std::nullopt, rhs.real(), rhs.imag()},
                {grid[i], "otoc_identity_residual", std::nullopt, std::abs(r.identity_residual), 0.0},
            };
            outputs[i].report = r.report;
        });
    } else {
        auto make_tracks = [&] {
            std::vector<std::unique_ptr<Track>> tracks;
            tracks.push_back(std::make_unique<Track>(*models.main, cfg.protocol, cfg));
            for (std::size_t k = 0; k < cfg.observables.size(); ++k) {
                tracks.push_back(models.references[k] ? std::make_unique<Track>(*models.references[k],
                                                                                cfg.observables[k].reference_protocol, cfg)
                                                      : nullptr);
            }
            return tracks;
        };
        auto sample = [&](std::vector<std::unique_ptr<Track>> &tracks, std::size_t i) {
            SampleOutput &out = outputs[i];
            const StateVector &psi = tracks[0]->at(grid[i], out.report);
            for (std::size_t k = 0; k < cfg.observables.size(); ++k) {
                const StateVector *ref = tracks[k + 1] ? &tracks[k + 1]->at(grid[i], out.report) : nullptr;
                measure(cfg, psi, grid[i], cfg.observables[k], ref, out.rows);
            }
        };
        if (cfg.protocol == ProtocolKind::kPlain) {
            auto tracks = make_tracks();
            for (std::size_t i = 0; i < grid.size(); ++i) {
                sample(tracks, i);
            }
        } else {
            parallel_for(grid.size(), options.threads, [&](std::size_t i) {
                auto tracks = make_tracks();
                sample(tracks, i);
            });
        }
    }

    RunResult result;
    RunReport total;
    double worst = 0.0;
    for (SampleOutput &o : outputs) {
        total.propagations += o.report.propagations;
        total.matvecs += o.report.matvecs;
        total.error_estimate += o.report.error_estimate;
        worst = std::max(worst, o.report.error_estimate);
        for (Row &r : o.rows) {
            result.rows.push_back(std::move(r));
        }
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const bool seconds = options.time_units == OutputTimeUnit::kSeconds;
    if (seconds) {
        const double scale = *cfg.angular_j_per_second();
        for (Row &r : result.rows) {
            r.time /= scale;
        }
    }

    result.metadata = {
        {"name", cfg.name},
        {"description", cfg.description},
        {"notes", cfg.notes},
        {"version", CLUSTERLAB_VERSION},
        {"config_hash", config_hash(cfg.source)},
        {"config", cfg.source},
        {"parameters", params_json(cfg)},
        {"geometry", cfg.geometry.describe()},
        {"model", to_string(cfg.model)},
        {"protocol", to_string(cfg.protocol)},
        {"basis", {{"kind", std::string(models.main->basis()->name())},
                   {"dimension", models.main->basis()->dimension()},
                   {"nonzeros", h->nonzeros()}}},
        {"time_units", seconds ? "seconds" : "invJ"},
        {"samples", grid.size()},
        {"t_final_invJ", cfg.t_final},
        {"residuals", {{"error_estimate_total", total.error_estimate},
                       {"error_estimate_max_per_sample", worst},
                       {"tolerance", cfg.propagation.tolerance},
                       {"propagations", total.propagations},
                       {"matvecs", total.matvecs}}},
        {"threads", options.threads},
        {"wall_clock_seconds", wall},
    };
    return result;
}

std::string format_csv_row(const Row &row) {
    char buf[160];
    std::string site = row.site ? std::to_string(*row.site) : "";
    std::snprintf(buf, sizeof buf, "%.17g,%s,%s,%.17g,%.17g", row.time, row.observable.c_str(), site.c_str(),
                  row.value, row.imag_value);
    return buf;
}

std::filesystem::path write_result(
    const RunResult &result, const std::filesystem::path &dir, const std::string &stem) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path csv = dir / (stem + ".csv");
    {
        std::ofstream out(csv);
        if (!out) {
            throw std::runtime_error("cannot write " + csv.string());
        }
        out << kCsvHeader << '\n';
        for (const Row &r : result.rows) {
            out << format_csv_row(r) << '\n';
        }
    }
    std::ofstream meta(dir / (stem + ".meta.json"));
    meta << result.metadata.dump(2) << '\n';
    return csv;
}

}  // namespace clusterlab::cli

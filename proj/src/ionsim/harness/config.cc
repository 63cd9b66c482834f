// Copyright 2026 The ionsim Authors
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

#include "ionsim/harness/config.h"

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace ionsim {

namespace {

using nlohmann::json;

const json &section(const json &root, const char *name) {
    static const json empty = json::object();
    auto it = root.find(name);
    if (it == root.end()) {
        return empty;
    }
    if (!it->is_object()) {
        throw ConfigError(std::string("Config section '") + name + "' must be an object.");
    }
    return *it;
}

template <typename T>
void read(const json &obj, const char *section_name, const char *key, T &out) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        return;
    }
    try {
        out = it->get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(std::string("Config field ") + section_name + "." + key + ": " + e.what());
    }
}

void reject_unknown(const json &obj, const std::string &where, std::initializer_list<const char *> known) {
    for (const auto &item : obj.items()) {
        bool found = false;
        for (const char *k : known) {
            found = found || item.key() == k;
        }
        if (!found) {
            throw ConfigError("Unknown config field " + where + item.key() + ".");
        }
    }
}

void check(bool ok, const std::string &field, const std::string &rule) {
    if (!ok) {
        throw ConfigError("Config field " + field + " " + rule + ".");
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    check(chain.ion_count >= 2, "chain.ion_count", "must be at least 2");
    check(chain.spacing_um > 0, "chain.spacing_um", "must be positive");
    check(
        chain.scatter_floors.empty() || chain.scatter_floors.size() == chain.ion_count,
        "chain.scatter_floors",
        "must be empty or have one entry per ion");
    for (double s : chain.scatter_floors) {
        check(s >= 0 && s < 1, "chain.scatter_floors", "entries must lie in [0, 1)");
    }
    check(beam.waist_um > 0, "beam.waist_um", "must be positive");
    check(beam.scatter_floor >= 0 && beam.scatter_floor < 1, "beam.scatter_floor", "must lie in [0, 1)");
    check(steering.geometry.focal_length_mm > 0, "steering.focal_length_mm", "must be positive");
    check(steering.geometry.demagnification >= 1, "steering.demagnification", "must be at least 1");
    check(steering.geometry.tilt_gain_rad_per_v2 > 0, "steering.tilt_gain_rad_per_v2", "must be positive");
    check(steering.v_max > 0, "steering.v_max", "must be positive");
    check(timing.t_m_us >= 0 && timing.t_m_us < timing.t_s_us, "timing", "requires 0 <= t_m_us < t_s_us");
    check(spam.f0 > 0.5 && spam.f0 <= 1, "spam.f0", "must lie in (0.5, 1]");
    check(spam.f1 > 0.5 && spam.f1 <= 1, "spam.f1", "must lie in (0.5, 1]");
    check(drift.sigma_rel >= 0, "drift.sigma_rel", "must be non-negative");
    check(drift.correlation_time_us > 0, "drift.correlation_time_us", "must be positive");
    check(drift.shot_period_us > 0, "drift.shot_period_us", "must be positive");
    for (double tau : fig2.tau_pi_us) {
        check(tau > 0, "fig2.tau_pi_us", "entries must be positive");
    }
    check(fig2.t_max_us > 0, "fig2.t_max_us", "must be positive");
    check(fig2.t_step_us > 0, "fig2.t_step_us", "must be positive");
    check(fig2.shots > 0, "fig2.shots", "must be positive");
    check(fig2.late_window_points > 0, "fig2.late_window_points", "must be positive");
    for (double tau : fig3.tau_pi_us) {
        check(tau > 0, "fig3.tau_pi_us", "entries must be positive");
    }
    check(fig3.t_stop_us > fig3.t_start_us, "fig3.t_stop_us", "must exceed fig3.t_start_us");
    check(fig3.t_step_us > 0, "fig3.t_step_us", "must be positive");
    check(fig3.shots > 0, "fig3.shots", "must be positive");
    check(fig3.plateau_fraction > 0.5 && fig3.plateau_fraction < 1, "fig3.plateau_fraction", "must lie in (0.5, 1)");
    check(waist.tau_pi_us > 0, "waist.tau_pi_us", "must be positive");
    check(waist.probe_fraction > 0 && waist.probe_fraction <= 1, "waist.probe_fraction", "must lie in (0, 1]");
    check(waist.shots > 0, "waist.shots", "must be positive");
    check(table1.tau_pi_us > 0, "table1.tau_pi_us", "must be positive");
    check(table1.shots_per_basis > 0, "table1.shots_per_basis", "must be positive");
    check(table1.bootstrap_resamples >= 100, "table1.bootstrap_resamples", "must be at least 100");

    try {
        calibrate_voltage_sets(IonChain::linear(chain.ion_count, chain.spacing_um), steering.geometry, steering.v_max);
    } catch (const std::exception &e) {
        throw ConfigError(std::string("Ion chain is not reachable by the mirrors: ") + e.what());
    }
}

std::uint64_t ExperimentConfig::require_seed() const {
    if (!seed.has_value()) {
        throw ConfigError("A seed is required (config field 'seed' or --seed).");
    }
    return *seed;
}

void ExperimentConfig::override_shots(size_t shots) {
    fig2.shots = shots;
    fig3.shots = shots;
    waist.shots = shots;
    table1.shots_per_basis = shots;
}

ExperimentConfig config_from_json(const json &j) {
    if (!j.is_object()) {
        throw ConfigError("Config must be a JSON object.");
    }
    ExperimentConfig c;
    reject_unknown(
        j,
        "",
        {"schema_version", "seed", "chain", "beam", "steering", "timing", "spam", "drift", "fig2", "fig3", "waist",
         "table1", "metadata"});
    if (j.contains("schema_version")) {
        int version = 0;
        read(j, "", "schema_version", version);
        if (version != kSchemaVersion) {
            throw ConfigError("Unsupported config schema_version " + std::to_string(version) + ".");
        }
    }
    if (j.contains("seed") && !j["seed"].is_null()) {
        std::uint64_t seed = 0;
        read(j, "", "seed", seed);
        c.seed = seed;
    }

    const json &chain = section(j, "chain");
    reject_unknown(chain, "chain.", {"ion_count", "spacing_um", "scatter_floors"});
    read(chain, "chain", "ion_count", c.chain.ion_count);
    read(chain, "chain", "spacing_um", c.chain.spacing_um);
    read(chain, "chain", "scatter_floors", c.chain.scatter_floors);

    const json &beam = section(j, "beam");
    reject_unknown(beam, "beam.", {"waist_um", "scatter_floor"});
    read(beam, "beam", "waist_um", c.beam.waist_um);
    read(beam, "beam", "scatter_floor", c.beam.scatter_floor);

    const json &steer = section(j, "steering");
    reject_unknown(steer, "steering.", {"focal_length_mm", "demagnification", "tilt_gain_rad_per_v2", "v_max"});
    read(steer, "steering", "focal_length_mm", c.steering.geometry.focal_length_mm);
    read(steer, "steering", "demagnification", c.steering.geometry.demagnification);
    read(steer, "steering", "tilt_gain_rad_per_v2", c.steering.geometry.tilt_gain_rad_per_v2);
    read(steer, "steering", "v_max", c.steering.v_max);

    const json &timing = section(j, "timing");
    reject_unknown(timing, "timing.", {"t_m_us", "t_s_us"});
    read(timing, "timing", "t_m_us", c.timing.t_m_us);
    read(timing, "timing", "t_s_us", c.timing.t_s_us);

    const json &spam = section(j, "spam");
    reject_unknown(spam, "spam.", {"f0", "f1"});
    read(spam, "spam", "f0", c.spam.f0);
    read(spam, "spam", "f1", c.spam.f1);

    const json &drift = section(j, "drift");
    reject_unknown(drift, "drift.", {"sigma_rel", "correlation_time_us", "shot_period_us"});
    read(drift, "drift", "sigma_rel", c.drift.sigma_rel);
    read(drift, "drift", "correlation_time_us", c.drift.correlation_time_us);
    read(drift, "drift", "shot_period_us", c.drift.shot_period_us);

    const json &fig2 = section(j, "fig2");
    reject_unknown(fig2, "fig2.", {"tau_pi_us", "t_max_us", "t_step_us", "shots", "late_window_points"});
    read(fig2, "fig2", "tau_pi_us", c.fig2.tau_pi_us);
    read(fig2, "fig2", "t_max_us", c.fig2.t_max_us);
    read(fig2, "fig2", "t_step_us", c.fig2.t_step_us);
    read(fig2, "fig2", "shots", c.fig2.shots);
    read(fig2, "fig2", "late_window_points", c.fig2.late_window_points);

    const json &fig3 = section(j, "fig3");
    reject_unknown(fig3, "fig3.", {"tau_pi_us", "t_start_us", "t_stop_us", "t_step_us", "shots", "plateau_fraction"});
    read(fig3, "fig3", "tau_pi_us", c.fig3.tau_pi_us);
    read(fig3, "fig3", "t_start_us", c.fig3.t_start_us);
    read(fig3, "fig3", "t_stop_us", c.fig3.t_stop_us);
    read(fig3, "fig3", "t_step_us", c.fig3.t_step_us);
    read(fig3, "fig3", "shots", c.fig3.shots);
    read(fig3, "fig3", "plateau_fraction", c.fig3.plateau_fraction);

    const json &waist = section(j, "waist");
    reject_unknown(waist, "waist.", {"tau_pi_us", "probe_fraction", "shots"});
    read(waist, "waist", "tau_pi_us", c.waist.tau_pi_us);
    read(waist, "waist", "probe_fraction", c.waist.probe_fraction);
    read(waist, "waist", "shots", c.waist.shots);

    const json &table1 = section(j, "table1");
    reject_unknown(table1, "table1.", {"tau_pi_us", "shots_per_basis", "bootstrap_resamples"});
    read(table1, "table1", "tau_pi_us", c.table1.tau_pi_us);
    read(table1, "table1", "shots_per_basis", c.table1.shots_per_basis);
    read(table1, "table1", "bootstrap_resamples", c.table1.bootstrap_resamples);

    if (j.contains("metadata")) {
        c.metadata = j["metadata"];
    }
    c.validate();
    return c;
}

json config_to_json(const ExperimentConfig &c) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["seed"] = c.seed.has_value() ? json(*c.seed) : json(nullptr);
    j["chain"] = {
        {"ion_count", c.chain.ion_count},
        {"spacing_um", c.chain.spacing_um},
        {"scatter_floors", c.chain.scatter_floors},
    };
    j["beam"] = {{"waist_um", c.beam.waist_um}, {"scatter_floor", c.beam.scatter_floor}};
    j["steering"] = {
        {"focal_length_mm", c.steering.geometry.focal_length_mm},
        {"demagnification", c.steering.geometry.demagnification},
        {"tilt_gain_rad_per_v2", c.steering.geometry.tilt_gain_rad_per_v2},
        {"v_max", c.steering.v_max},
    };
    j["timing"] = {{"t_m_us", c.timing.t_m_us}, {"t_s_us", c.timing.t_s_us}};
    j["spam"] = {{"f0", c.spam.f0}, {"f1", c.spam.f1}};
    j["drift"] = {
        {"sigma_rel", c.drift.sigma_rel},
        {"correlation_time_us", c.drift.correlation_time_us},
        {"shot_period_us", c.drift.shot_period_us},
    };
    j["fig2"] = {
        {"tau_pi_us", c.fig2.tau_pi_us},
        {"t_max_us", c.fig2.t_max_us},
        {"t_step_us", c.fig2.t_step_us},
        {"shots", c.fig2.shots},
        {"late_window_points", c.fig2.late_window_points},
    };
    j["fig3"] = {
        {"tau_pi_us", c.fig3.tau_pi_us},
        {"t_start_us", c.fig3.t_start_us},
        {"t_stop_us", c.fig3.t_stop_us},
        {"t_step_us", c.fig3.t_step_us},
        {"shots", c.fig3.shots},
        {"plateau_fraction", c.fig3.plateau_fraction},
    };
    j["waist"] = {
        {"tau_pi_us", c.waist.tau_pi_us},
        {"probe_fraction", c.waist.probe_fraction},
        {"shots", c.waist.shots},
    };
    j["table1"] = {
        {"tau_pi_us", c.table1.tau_pi_us},
        {"shots_per_basis", c.table1.shots_per_basis},
        {"bootstrap_resamples", c.table1.bootstrap_resamples},
    };
    j["metadata"] = c.metadata;
    return j;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("Cannot open config file '" + path + "'.");
    }
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::exception &e) {
        throw ConfigError("Cannot parse config file '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

json documentation_constants() {
    return {
        {"hyperfine_splitting_ghz", 12.6},
        {"raman_detuning_thz", 14.0},
        {"repetition_rate_mhz", 76.0},
        {"raman_wavelength_nm", 376.0},
        {"detection_wavelength_nm", 369.5},
        {"ion_height_um", 80.0},
    };
}

}  // namespace ionsim

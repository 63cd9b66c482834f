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

#ifndef IONSIM_HARNESS_CONFIG_H
#define IONSIM_HARNESS_CONFIG_H

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ionsim/detection.h"
#include "ionsim/drift.h"
#include "ionsim/mems.h"
#include "ionsim/optics.h"

namespace ionsim {

constexpr int kSchemaVersion = 1;

/// Bad or missing configuration. Maps to CLI exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChainConfig {
    size_t ion_count = 2;
    double spacing_um = 7.4;
    /// Empty, or one floor per ion.
    std::vector<double> scatter_floors{2.9e-4, 1.3e-4};
};

struct BeamConfig {
    double waist_um = 3.3;
    double scatter_floor = 0.0;
};

struct SteeringConfig {
    SteeringGeometry geometry;
    double v_max = kDefaultMaxVoltage;
};

struct Fig2Config {
    /// Peak pi-time while targeting ion A and ion B respectively.
    std::array<double, 2> tau_pi_us{13.0, 15.0};
    double t_max_us = 5000.0;
    double t_step_us = 13.0;
    size_t shots = 500;
    /// Points at the end of each scan averaged into the late-time target level.
    size_t late_window_points = 20;
};

struct Fig3Config {
    /// Pulse length with the beam aligned for voltage set 1 and set 2.
    std::array<double, 2> tau_pi_us{1.5, 1.3};
    double t_start_us = -3.0;
    double t_stop_us = 4.0;
    double t_step_us = 0.1;
    size_t shots = 500;
    double plateau_fraction = 0.98;
};

struct WaistConfig {
    double tau_pi_us = 13.0;
    /// Probe pulse length as a fraction of the peak pi-time.
    double probe_fraction = 0.5;
    size_t shots = 2000;
};

struct Table1Config {
    double tau_pi_us = 13.0;
    size_t shots_per_basis = 2000;
    size_t bootstrap_resamples = 1000;
};

/// Everything needed to reproduce a run. The seed has no default.
struct ExperimentConfig {
    std::optional<std::uint64_t> seed;
    ChainConfig chain;
    BeamConfig beam;
    SteeringConfig steering;
    SwitchTiming timing;
    SpamModel spam;
    DriftModel drift;
    Fig2Config fig2;
    Fig3Config fig3;
    WaistConfig waist;
    Table1Config table1;
    /// Free-form notes carried through to result files.
    nlohmann::json metadata = nlohmann::json::object();

    /// Throws ConfigError naming the first offending field.
    void validate() const;
    std::uint64_t require_seed() const;
    /// Overrides every experiment's shot count.
    void override_shots(size_t shots);
};

ExperimentConfig config_from_json(const nlohmann::json &j);
nlohmann::json config_to_json(const ExperimentConfig &config);
/// Throws ConfigError if the file is missing or malformed.
ExperimentConfig load_config(const std::string &path);

/// Hardware constants of the modeled apparatus. Never used by the dynamics;
/// copied into every result file.
nlohmann::json documentation_constants();

}  // namespace ionsim

#endif

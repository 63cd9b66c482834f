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

#ifndef IONSIM_HARNESS_EXPERIMENTS_H
#define IONSIM_HARNESS_EXPERIMENTS_H

#include <array>
#include <string>
#include <vector>

#include "json.hpp"

#include "ionsim/harness/analysis.h"
#include "ionsim/harness/config.h"
#include "ionsim/simulate.h"
#include "ionsim/tomography.h"

namespace ionsim {

/// Tidy CSV row: x, series, y, yerr.
struct CsvRow {
    double x;
    std::string series;
    double y;
    double yerr;
};

/// Serializable outcome of one experiment.
struct ResultBundle {
    std::string experiment;
    nlohmann::json config;
    nlohmann::json data;
    nlohmann::json derived;
    std::vector<CsvRow> csv;

    /// Full document including schema version, software version and
    /// `timestamp` (the only field that varies between identical runs).
    nlohmann::json to_json(const std::string &timestamp) const;
};

constexpr const char *kSoftwareVersion = "0.1.0";

/// Rabi scans with the beam on ion A, then on ion B.
struct Fig2Result {
    struct TargetRun {
        size_t target = 0;
        size_t neighbor = 1;
        double pi_time_us = 0;
        RabiScan scan;
        /// Mean target bright fraction over the last late_window_points points.
        double target_late_mean = 0;
        double target_late_std_error = 0;
        /// Running mean of the target curve over late_window_points points.
        std::vector<double> target_envelope;
        /// Neighbor bright fraction at the longest duration, as measured.
        double neighbor_bright_at_end = 0;
        /// Likelihood fit over the whole neighbor curve.
        CrosstalkFit fit;
        /// Closed-form inversion of the raw end-point bright fraction.
        double crosstalk_end_point = 0;
        /// Closed-form inversion of the fitted end-point population.
        double crosstalk_fitted = 0;
    };
    std::array<TargetRun, 2> runs;
};

struct Fig3Result {
    SwitchingScan scan;
    /// t_s - t_m of the configured mirror model.
    double model_switch_time_us = 0;
};

struct WaistResult {
    double configured_waist_um = 0;
    double tau_a_us = 0;
    double tau_b_us = 0;
    double tau_c_us = 0;
    WaistEstimate estimate{};
};

struct Table1Row {
    std::string gate_a;
    std::string gate_b;
    GateAngles angles_a;
    GateAngles angles_b;
    /// Ion A then ion B.
    std::vector<TomographyResult> results;
};

struct Table1Result {
    std::vector<Table1Row> rows;
};

/// The seven gate pairs, in table order.
std::vector<Table1Row> table1_gate_pairs();

Fig2Result run_fig2(const ExperimentConfig &config);
Fig3Result run_fig3(const ExperimentConfig &config);
WaistResult run_waist(const ExperimentConfig &config);
Table1Result run_table1(const ExperimentConfig &config);

ResultBundle make_bundle(const ExperimentConfig &config, const Fig2Result &r);
ResultBundle make_bundle(const ExperimentConfig &config, const Fig3Result &r);
ResultBundle make_bundle(const ExperimentConfig &config, const WaistResult &r);
ResultBundle make_bundle(const ExperimentConfig &config, const Table1Result &r);

/// Runs the named experiment ("fig2", "fig3", "waist" or "table1").
ResultBundle run_experiment(const std::string &name, const ExperimentConfig &config);

/// Ion chain of the configuration with every ion placed where its calibrated
/// voltage set actually points the beam.
IonChain calibrated_chain(const ExperimentConfig &config);

}  // namespace ionsim

#endif

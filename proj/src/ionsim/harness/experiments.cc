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

#include "ionsim/harness/experiments.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ionsim/parallel.h"
#include "ionsim/random.h"

namespace ionsim {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

const char *kTargetNames[2] = {"targetA", "targetB"};
const char *kIonNames[2] = {"ionA", "ionB"};

std::string region_name(SwitchRegion r) {
    switch (r) {
        case SwitchRegion::I:
            return "I";
        case SwitchRegion::II:
            return "II";
        case SwitchRegion::III:
            return "III";
        case SwitchRegion::IV:
            return "IV";
        case SwitchRegion::V:
            return "V";
        default:
            return "unclassified";
    }
}

AddressingBeam configured_beam(const ExperimentConfig &config, double pi_time_us) {
    AddressingBeam beam;
    beam.waist_um = config.beam.waist_um;
    beam.scatter_floor = config.beam.scatter_floor;
    beam.peak_pi_time_us = pi_time_us;
    return beam;
}

/// Mean rotation angle of each ion for one parked pulse, averaged over drifted shots.
std::vector<double> mean_probe_angles(
    const IonChain &chain,
    const AddressingBeam &beam,
    double probe_us,
    const DriftModel &drift,
    std::uint64_t seed,
    const std::string &label,
    size_t shots) {
    Schedule schedule;
    schedule.initial_position = beam.center;
    schedule.pulses.push_back({0.0, probe_us, 0.0, 1.0});
    schedule.total_duration_us = probe_us;
    auto angles = accumulate_pulse_angles(chain, beam, schedule);
    DriftPath path(drift, seed, experiment_id(label), shots);
    std::vector<double> sums(chain.size(), 0.0);
    for (size_t k = 0; k < shots; k++) {
        auto shot = evolve_shot(schedule, angles, path.factor(k));
        for (size_t i = 0; i < chain.size(); i++) {
            const PureState &s = shot.states[i];
            sums[i] += 2 * std::atan2(std::abs(s.amp1), std::abs(s.amp0));
        }
    }
    for (double &v : sums) {
        v /= static_cast<double>(shots);
    }
    return sums;
}

json curve_json(const std::vector<double> &y, const std::vector<double> &err) {
    return {{"bright", y}, {"stderr", err}};
}

json density_json(const DensityMatrix &rho) {
    json rows = json::array();
    for (size_t r = 0; r < 2; r++) {
        json row = json::array();
        for (size_t c = 0; c < 2; c++) {
            row.push_back({rho.matrix()(r, c).real(), rho.matrix()(r, c).imag()});
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

json ResultBundle::to_json(const std::string &timestamp) const {
    return {
        {"schema_version", kSchemaVersion},
        {"experiment", experiment},
        {"software_version", kSoftwareVersion},
        {"timestamp", timestamp},
        {"config", config},
        {"documentation_constants", documentation_constants()},
        {"data", data},
        {"derived", derived},
    };
}

IonChain calibrated_chain(const ExperimentConfig &config) {
    IonChain nominal = IonChain::linear(config.chain.ion_count, config.chain.spacing_um);
    auto sets = calibrate_voltage_sets(nominal, config.steering.geometry, config.steering.v_max);
    IonChain chain;
    for (const auto &v : sets) {
        chain.positions.push_back(position_for_voltage_set(v, config.steering.geometry, config.steering.v_max));
    }
    chain.scatter_floors = config.chain.scatter_floors;
    chain.validate();
    return chain;
}

std::vector<Table1Row> table1_gate_pairs() {
    const GateAngles id{0, 0};
    const GateAngles x90{0, kPi / 2};
    const GateAngles x180{0, kPi};
    const GateAngles y90{kPi / 2, kPi / 2};
    return {
        {"Rx(pi/2)", "I", x90, id, {}},
        {"I", "Rx(pi/2)", id, x90, {}},
        {"Rx(pi)", "Ry(pi/2)", x180, y90, {}},
        {"Rx(pi/2)", "Rx(pi)", x90, x180, {}},
        {"Rx(pi/2)", "Rx(pi/2)", x90, x90, {}},
        {"Rx(pi/2)", "Ry(pi/2)", x90, y90, {}},
        {"Ry(pi/2)", "Rx(pi/2)", y90, x90, {}},
    };
}

Fig2Result run_fig2(const ExperimentConfig &config) {
    config.validate();
    std::uint64_t seed = config.require_seed();
    IonChain chain = calibrated_chain(config);
    auto grid = scan_grid(0.0, config.fig2.t_max_us, config.fig2.t_step_us);
    ScanSettings settings{config.fig2.shots, config.spam, config.drift, seed};

    Fig2Result result;
    for (size_t target = 0; target < 2; target++) {
        auto &run = result.runs[target];
        run.target = target;
        run.neighbor = target == 0 ? 1 : 0;
        run.pi_time_us = config.fig2.tau_pi_us[target];
        run.scan = run_rabi_scan(chain, configured_beam(config, run.pi_time_us), target, grid, settings, "fig2");

        const auto &tgt = run.scan.bright_fraction[target];
        size_t window = std::min(config.fig2.late_window_points, tgt.size());
        double sum = 0;
        double sum_sq = 0;
        for (size_t j = tgt.size() - window; j < tgt.size(); j++) {
            sum += tgt[j];
            sum_sq += tgt[j] * tgt[j];
        }
        double w = static_cast<double>(window);
        run.target_late_mean = sum / w;
        double var = window > 1 ? std::max(0.0, (sum_sq - sum * sum / w) / (w - 1)) : 0.0;
        run.target_late_std_error = std::sqrt(var / w);

        run.target_envelope.resize(tgt.size());
        double acc = 0;
        for (size_t j = 0; j < tgt.size(); j++) {
            acc += tgt[j];
            if (j >= window) {
                acc -= tgt[j - window];
            }
            run.target_envelope[j] = acc / static_cast<double>(std::min(j + 1, window));
        }

        const auto &nb = run.scan.bright_fraction[run.neighbor];
        double t_end = grid.back();
        run.neighbor_bright_at_end = nb.back();
        run.fit = fit_neighbor_crosstalk(
            grid, run.scan.bright_counts[run.neighbor], run.scan.shots, run.pi_time_us, config.spam);
        run.crosstalk_end_point = crosstalk_from_populations(run.neighbor_bright_at_end, t_end, run.pi_time_us);
        run.crosstalk_fitted = crosstalk_from_populations(run.fit.population_at_end, t_end, run.pi_time_us);
    }
    return result;
}

Fig3Result run_fig3(const ExperimentConfig &config) {
    config.validate();
    std::uint64_t seed = config.require_seed();
    IonChain calibrated = calibrated_chain(config);
    IonChain sites;
    sites.positions = {calibrated.positions[0], calibrated.positions[1]};
    auto grid = scan_grid(config.fig3.t_start_us, config.fig3.t_stop_us, config.fig3.t_step_us);
    ScanSettings settings{config.fig3.shots, config.spam, config.drift, seed};

    Fig3Result result;
    result.scan = run_switching_scan(
        sites,
        configured_beam(config, config.fig3.tau_pi_us[0]),
        grid,
        config.fig3.tau_pi_us[0],
        config.fig3.tau_pi_us[1],
        config.timing,
        settings,
        config.fig3.plateau_fraction);
    result.model_switch_time_us = effective_switch_time(config.timing);
    return result;
}

WaistResult run_waist(const ExperimentConfig &config) {
    config.validate();
    std::uint64_t seed = config.require_seed();
    IonChain calibrated = calibrated_chain(config);
    IonChain pair;
    pair.positions = {calibrated.positions[0], calibrated.positions[1]};
    if (!calibrated.scatter_floors.empty()) {
        pair.scatter_floors = {calibrated.scatter_floors[0], calibrated.scatter_floors[1]};
    }
    Vec2 midpoint = (pair.positions[0] + pair.positions[1]) * 0.5;
    AddressingBeam beam = configured_beam(config, config.waist.tau_pi_us).centered_at(midpoint);
    double probe = config.waist.probe_fraction * config.waist.tau_pi_us;

    auto side = mean_probe_angles(pair, beam, probe, config.drift, seed, "waist/pair", config.waist.shots);
    IonChain center;
    center.positions = {midpoint};
    auto mid = mean_probe_angles(center, beam, probe, config.drift, seed, "waist/center", config.waist.shots);

    WaistResult result;
    result.configured_waist_um = config.beam.waist_um;
    result.tau_a_us = kPi * probe / side[0];
    result.tau_b_us = kPi * probe / side[1];
    result.tau_c_us = kPi * probe / mid[0];
    double spacing = (pair.positions[1] - pair.positions[0]).norm();
    result.estimate = estimate_waist(result.tau_a_us, result.tau_b_us, result.tau_c_us, spacing);
    return result;
}

Table1Result run_table1(const ExperimentConfig &config) {
    config.validate();
    std::uint64_t seed = config.require_seed();
    IonChain chain = calibrated_chain(config);
    AddressingBeam beam = configured_beam(config, config.table1.tau_pi_us).centered_at(chain.positions[0]);
    std::uint64_t exp_id = experiment_id("table1");

    Table1Result result;
    result.rows = table1_gate_pairs();
    for (size_t r = 0; r < result.rows.size(); r++) {
        auto &row = result.rows[r];
        TomographySettings settings{
            config.table1.shots_per_basis,
            config.table1.bootstrap_resamples,
            config.spam,
            config.drift,
            substream_seed(seed, exp_id, r),
        };
        row.results = run_tomography_experiment(row.angles_a, row.angles_b, chain, beam, config.timing, settings);
    }
    return result;
}

ResultBundle make_bundle(const ExperimentConfig &config, const Fig2Result &r) {
    ResultBundle b;
    b.experiment = "fig2";
    b.config = config_to_json(config);
    b.data["durations_us"] = r.runs[0].scan.durations_us;
    for (const auto &run : r.runs) {
        json t;
        t["pi_time_us"] = run.pi_time_us;
        t["target_site"] = run.target;
        for (size_t i = 0; i < run.scan.bright_fraction.size(); i++) {
            t[kIonNames[i]] = curve_json(run.scan.bright_fraction[i], run.scan.std_error[i]);
        }
        t["mean_drift"] = run.scan.mean_drift;
        t["target_envelope"] = run.target_envelope;
        b.data[kTargetNames[run.target]] = t;

        b.derived[kTargetNames[run.target]] = {
            {"target_late_mean", run.target_late_mean},
            {"target_late_std_error", run.target_late_std_error},
            {"neighbor_bright_at_end", run.neighbor_bright_at_end},
            {"neighbor_population_fit", run.fit.population_at_end},
            {"crosstalk_fit", run.fit.crosstalk},
            {"crosstalk_fit_std_error", run.fit.std_error},
            {"crosstalk_end_point", run.crosstalk_end_point},
            {"crosstalk_fitted_end_point", run.crosstalk_fitted},
        };

        const auto &t_values = run.scan.durations_us;
        for (size_t i = 0; i < run.scan.bright_fraction.size(); i++) {
            std::string series = std::string(kTargetNames[run.target]) + "/" + kIonNames[i];
            for (size_t j = 0; j < t_values.size(); j++) {
                b.csv.push_back({t_values[j], series, run.scan.bright_fraction[i][j], run.scan.std_error[i][j]});
            }
        }
        std::string env = std::string(kTargetNames[run.target]) + "/envelope";
        for (size_t j = 0; j < t_values.size(); j++) {
            b.csv.push_back({t_values[j], env, run.target_envelope[j], 0.0});
        }
    }
    return b;
}

ResultBundle make_bundle(const ExperimentConfig &config, const Fig3Result &r) {
    ResultBundle b;
    b.experiment = "fig3";
    b.config = config_to_json(config);
    const auto &s = r.scan;
    b.data["start_times_us"] = s.set1.start_times_us;
    b.data["set1"] = curve_json(s.set1.bright_fraction, s.set1.std_error);
    b.data["set1"]["pulse_us"] = s.set1.pulse_us;
    b.data["set2"] = curve_json(s.set2.bright_fraction, s.set2.std_error);
    b.data["set2"]["pulse_us"] = s.set2.pulse_us;
    json labels = json::array();
    for (auto l : s.analysis.labels) {
        labels.push_back(region_name(l));
    }
    b.data["regions"] = labels;

    json spans = json::array();
    for (const auto &span : s.analysis.spans) {
        spans.push_back({{"region", region_name(span.region)}, {"t_first_us", span.t_first_us}, {"t_last_us", span.t_last_us}});
    }
    b.derived = {
        {"left_plateau_end_us", s.analysis.left_plateau_end_us},
        {"right_plateau_start_us", s.analysis.right_plateau_start_us},
        {"switching_time_us", s.analysis.switching_time_us},
        {"model_switch_time_us", r.model_switch_time_us},
        {"plateau_fraction", s.analysis.plateau_fraction},
        {"regions_in_order", s.analysis.regions_in_order},
        {"region_spans", spans},
    };
    for (size_t j = 0; j < s.set1.start_times_us.size(); j++) {
        b.csv.push_back({s.set1.start_times_us[j], "set1", s.set1.bright_fraction[j], s.set1.std_error[j]});
    }
    for (size_t j = 0; j < s.set2.start_times_us.size(); j++) {
        b.csv.push_back({s.set2.start_times_us[j], "set2", s.set2.bright_fraction[j], s.set2.std_error[j]});
    }
    return b;
}

ResultBundle make_bundle(const ExperimentConfig &config, const WaistResult &r) {
    ResultBundle b;
    b.experiment = "waist";
    b.config = config_to_json(config);
    b.data["tau_pi_us"] = {{"A", r.tau_a_us}, {"B", r.tau_b_us}, {"C", r.tau_c_us}};
    b.derived = {
        {"waist_um", r.estimate.waist_um},
        {"from_a_um", r.estimate.from_a_um},
        {"from_b_um", r.estimate.from_b_um},
        {"spread_um", r.estimate.spread_um},
        {"configured_waist_um", r.configured_waist_um},
    };
    b.csv.push_back({0, "tau_pi", r.tau_a_us, 0});
    b.csv.push_back({1, "tau_pi", r.tau_b_us, 0});
    b.csv.push_back({2, "tau_pi", r.tau_c_us, 0});
    b.csv.push_back({0, "waist", r.estimate.waist_um, r.estimate.spread_um});
    return b;
}

ResultBundle make_bundle(const ExperimentConfig &config, const Table1Result &r) {
    ResultBundle b;
    b.experiment = "table1";
    b.config = config_to_json(config);
    json rows = json::array();
    json fidelities = json::array();
    for (size_t k = 0; k < r.rows.size(); k++) {
        const auto &row = r.rows[k];
        json ions = json::array();
        json pair = json::array();
        for (size_t i = 0; i < row.results.size(); i++) {
            const auto &t = row.results[i];
            json counts;
            for (Basis basis : kAllBases) {
                counts[basis_name(basis)] = {{"shots", t.counts[basis].shots}, {"bright", t.counts[basis].bright}};
            }
            auto eig = t.physical.eigenvalues();
            ions.push_back({
                {"counts", counts},
                {"raw_bloch", {t.raw.x, t.raw.y, t.raw.z}},
                {"density_matrix", density_json(t.physical)},
                {"eigenvalues", {eig[0], eig[1]}},
                {"fidelity", t.estimate.fidelity},
                {"ci_low", t.estimate.ci_low},
                {"ci_high", t.estimate.ci_high},
                {"analytic_std_error", t.estimate.analytic_std_error},
            });
            pair.push_back(t.estimate.fidelity);
            double half = std::max(t.estimate.fidelity - t.estimate.ci_low, t.estimate.ci_high - t.estimate.fidelity);
            b.csv.push_back({static_cast<double>(k + 1), kIonNames[i], t.estimate.fidelity, half});
        }
        rows.push_back({{"gate_a", row.gate_a}, {"gate_b", row.gate_b}, {"ions", ions}});
        fidelities.push_back(pair);
    }
    b.data["rows"] = rows;
    b.derived["fidelities"] = fidelities;
    return b;
}

ResultBundle run_experiment(const std::string &name, const ExperimentConfig &config) {
    if (name == "fig2") {
        return make_bundle(config, run_fig2(config));
    }
    if (name == "fig3") {
        return make_bundle(config, run_fig3(config));
    }
    if (name == "waist") {
        return make_bundle(config, run_waist(config));
    }
    if (name == "table1") {
        return make_bundle(config, run_table1(config));
    }
    throw std::invalid_argument("Unknown experiment '" + name + "'.");
}

}  // namespace ionsim

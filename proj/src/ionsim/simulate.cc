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

#include "ionsim/simulate.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ionsim/parallel.h"
#include "ionsim/random.h"

namespace ionsim {

namespace {

std::vector<double> intensities_at(const IonChain &chain, const AddressingBeam &beam, Vec2 center) {
    AddressingBeam moved = beam.centered_at(center);
    std::vector<double> out(chain.size());
    for (size_t i = 0; i < chain.size(); i++) {
        out[i] = relative_intensity(moved, chain.positions[i], chain.floor_for(i, beam.scatter_floor));
    }
    return out;
}

bool beam_moving_at(const std::vector<MirrorTrajectory> &trajectories, double t_us) {
    const MirrorTrajectory *active = nullptr;
    for (const auto &traj : trajectories) {
        if (traj.switch_time_us <= t_us) {
            active = &traj;
        }
    }
    return active != nullptr && active->from != active->to && t_us > active->motion_start_us() &&
           t_us < active->motion_end_us();
}

}  // namespace

PulseAngles accumulate_pulse_angles(
    const IonChain &chain, const AddressingBeam &beam, const Schedule &schedule, double step_us, const IonChain *sites) {
    if (!(step_us > 0)) {
        throw std::invalid_argument("Integration step must be positive.");
    }
    beam.validate();
    chain.validate();
    const IonChain &targets = sites == nullptr ? chain : *sites;
    schedule.validate(targets.size());
    auto trajectories = schedule.trajectories(targets);

    std::vector<double> breakpoints;
    for (const auto &traj : trajectories) {
        breakpoints.push_back(traj.switch_time_us);
        breakpoints.push_back(traj.motion_start_us());
        breakpoints.push_back(traj.motion_end_us());
    }
    std::sort(breakpoints.begin(), breakpoints.end());

    PulseAngles angles;
    angles.reserve(schedule.pulses.size());
    for (const auto &pulse : schedule.pulses) {
        std::vector<double> theta(chain.size(), 0.0);
        double rate = std::numbers::pi / beam.peak_pi_time_us * pulse.amplitude_scale;

        std::vector<double> cuts{pulse.t_start_us};
        for (double b : breakpoints) {
            if (b > pulse.t_start_us && b < pulse.t_end_us()) {
                cuts.push_back(b);
            }
        }
        cuts.push_back(pulse.t_end_us());

        for (size_t c = 0; c + 1 < cuts.size(); c++) {
            double lo = cuts[c];
            double hi = cuts[c + 1];
            double len = hi - lo;
            if (len <= 0) {
                continue;
            }
            double mid = (lo + hi) / 2;
            if (!beam_moving_at(trajectories, mid)) {
                auto inten = intensities_at(chain, beam, beam_center_at(trajectories, schedule.initial_position, mid));
                for (size_t i = 0; i < chain.size(); i++) {
                    theta[i] += rate * len * inten[i];
                }
                continue;
            }
            auto steps = static_cast<size_t>(std::ceil(len / step_us - 1e-9));
            steps = std::max<size_t>(steps, 1);
            double h = len / static_cast<double>(steps);
            for (size_t k = 0; k < steps; k++) {
                double t = lo + (static_cast<double>(k) + 0.5) * h;
                auto inten = intensities_at(chain, beam, beam_center_at(trajectories, schedule.initial_position, t));
                for (size_t i = 0; i < chain.size(); i++) {
                    theta[i] += rate * h * inten[i];
                }
            }
        }
        angles.push_back(std::move(theta));
    }
    return angles;
}

ShotResult evolve_shot(const Schedule &schedule, const PulseAngles &unit_angles, double drift_factor) {
    size_t ions = unit_angles.empty() ? 0 : unit_angles.front().size();
    ShotResult result;
    result.drift_factor = drift_factor;
    result.states.assign(ions, PureState::zero());
    result.angles = unit_angles;
    for (size_t p = 0; p < schedule.pulses.size(); p++) {
        for (size_t i = 0; i < ions; i++) {
            double theta = unit_angles[p][i] * drift_factor;
            result.angles[p][i] = theta;
            if (theta != 0) {
                result.states[i] = rotation_gate(schedule.pulses[p].phase, theta).apply(result.states[i]);
            }
        }
    }
    return result;
}

ShotResult simulate_shot(const IonChain &chain, const AddressingBeam &beam, const Schedule &schedule, double drift_factor) {
    auto angles = accumulate_pulse_angles(chain, beam, schedule);
    auto result = evolve_shot(schedule, angles, drift_factor);
    if (result.states.empty()) {
        result.states.assign(chain.size(), PureState::zero());
    }
    return result;
}

ShotResult simulate_shot(
    const IonChain &chain,
    const AddressingBeam &beam,
    const Schedule &schedule,
    const DriftModel &drift,
    std::uint64_t seed,
    std::uint64_t experiment,
    std::uint64_t shot_index) {
    return simulate_shot(chain, beam, schedule, sample_drift(drift, seed, experiment, shot_index));
}

double binomial_std_error(size_t bright, size_t shots) {
    if (shots == 0) {
        return 0;
    }
    double n = static_cast<double>(shots);
    double p = static_cast<double>(bright) / n;
    return std::sqrt(p * (1 - p) / n);
}

RabiScan run_rabi_scan(
    const IonChain &chain,
    const AddressingBeam &beam,
    size_t target_site,
    const std::vector<double> &durations_us,
    const ScanSettings &settings,
    std::string_view label) {
    if (target_site >= chain.size()) {
        throw InvalidSiteError("Rabi scan target outside the chain.");
    }
    for (double t : durations_us) {
        if (!(t >= 0)) {
            throw std::invalid_argument("Rabi scan durations must be non-negative.");
        }
    }
    settings.spam.validate();
    AddressingBeam parked = beam.centered_at(chain.positions[target_site]);
    size_t points = durations_us.size();
    size_t shots = settings.shots;
    std::uint64_t exp_id = experiment_id(std::string(label) + "/target" + std::to_string(target_site));
    DriftPath drift(settings.drift, settings.seed, exp_id, points * shots);

    RabiScan scan;
    scan.target_site = target_site;
    scan.shots = shots;
    scan.durations_us = durations_us;
    scan.bright_counts.assign(chain.size(), std::vector<size_t>(points, 0));
    scan.mean_drift.assign(points, 1.0);

    parallel_for(points, [&](size_t j) {
        Schedule schedule;
        schedule.initial_position = parked.center;
        schedule.pulses.push_back({0.0, durations_us[j], 0.0, 1.0});
        schedule.total_duration_us = durations_us[j];
        auto angles = accumulate_pulse_angles(chain, parked, schedule);
        double drift_sum = 0;
        for (size_t k = 0; k < shots; k++) {
            size_t index = j * shots + k;
            double factor = drift.factor(index);
            drift_sum += factor;
            auto shot = evolve_shot(schedule, angles, factor);
            auto rng = substream(settings.seed, exp_id, index);
            for (size_t i = 0; i < chain.size(); i++) {
                scan.bright_counts[i][j] += detect(shot.states[i].p1(), settings.spam, rng) ? 1 : 0;
            }
        }
        if (shots > 0) {
            scan.mean_drift[j] = drift_sum / static_cast<double>(shots);
        }
    });

    scan.bright_fraction.assign(chain.size(), std::vector<double>(points, 0.0));
    scan.std_error.assign(chain.size(), std::vector<double>(points, 0.0));
    for (size_t i = 0; i < chain.size(); i++) {
        for (size_t j = 0; j < points; j++) {
            size_t k = scan.bright_counts[i][j];
            scan.bright_fraction[i][j] = shots == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(shots);
            scan.std_error[i][j] = binomial_std_error(k, shots);
        }
    }
    return scan;
}

SwitchingCurve run_switching_curve(
    const IonChain &sites,
    const AddressingBeam &beam,
    size_t aligned_site,
    const std::vector<double> &start_times_us,
    double pulse_us,
    const SwitchTiming &timing,
    const ScanSettings &settings,
    std::string_view label) {
    if (sites.size() < 2) {
        throw std::invalid_argument("Switching scan needs two voltage-set sites.");
    }
    if (aligned_site >= sites.size()) {
        throw InvalidSiteError("Switching scan aligned site outside the site list.");
    }
    if (!(pulse_us > 0)) {
        throw std::invalid_argument("Switching scan pulse length must be positive.");
    }
    timing.validate();
    settings.spam.validate();

    IonChain ion;
    ion.positions = {sites.positions[aligned_site]};
    if (!sites.scatter_floors.empty()) {
        ion.scatter_floors = {sites.scatter_floors[aligned_site]};
    }
    AddressingBeam driven = beam;
    driven.peak_pi_time_us = pulse_us;

    size_t points = start_times_us.size();
    size_t shots = settings.shots;
    std::uint64_t exp_id = experiment_id(std::string(label) + "/aligned" + std::to_string(aligned_site));
    DriftPath drift(settings.drift, settings.seed, exp_id, points * shots);

    SwitchingCurve curve;
    curve.aligned_site = aligned_site;
    curve.pulse_us = pulse_us;
    curve.start_times_us = start_times_us;
    curve.bright_counts.assign(points, 0);

    parallel_for(points, [&](size_t j) {
        double t = start_times_us[j];
        Schedule schedule;
        schedule.initial_position = sites.positions[0];
        schedule.timing = timing;
        schedule.switches.push_back({0.0, 1});
        schedule.pulses.push_back({t, pulse_us, 0.0, 1.0});
        schedule.total_duration_us = std::max(t + pulse_us, 0.0);
        auto angles = accumulate_pulse_angles(ion, driven, schedule, kIntegrationStepUs, &sites);
        size_t bright = 0;
        for (size_t k = 0; k < shots; k++) {
            size_t index = j * shots + k;
            auto shot = evolve_shot(schedule, angles, drift.factor(index));
            auto rng = substream(settings.seed, exp_id, index);
            bright += detect(shot.states[0].p1(), settings.spam, rng) ? 1 : 0;
        }
        curve.bright_counts[j] = bright;
    });

    curve.bright_fraction.resize(points);
    curve.std_error.resize(points);
    for (size_t j = 0; j < points; j++) {
        curve.bright_fraction[j] =
            shots == 0 ? 0.0 : static_cast<double>(curve.bright_counts[j]) / static_cast<double>(shots);
        curve.std_error[j] = binomial_std_error(curve.bright_counts[j], shots);
    }
    return curve;
}

namespace {

struct CurveLevels {
    std::vector<bool> high;
    std::vector<bool> dark;
};

CurveLevels classify_levels(const SwitchingCurve &curve, double plateau_fraction) {
    const auto &p = curve.bright_fraction;
    if (p.empty()) {
        throw ScanRangeError("Switching scan has no points.");
    }
    double p_max = *std::max_element(p.begin(), p.end());
    double p_min = *std::min_element(p.begin(), p.end());
    double high_cut = plateau_fraction * p_max;
    double dark_cut = p_min + (1 - plateau_fraction) * (p_max - p_min);
    CurveLevels levels;
    for (double v : p) {
        levels.high.push_back(v >= high_cut);
        levels.dark.push_back(v <= dark_cut);
    }
    return levels;
}

}  // namespace

SwitchingAnalysis analyze_switching(const SwitchingCurve &set1, const SwitchingCurve &set2, double plateau_fraction) {
    if (set1.start_times_us != set2.start_times_us) {
        throw std::invalid_argument("Both switching curves must share the same start-time grid.");
    }
    if (!(plateau_fraction > 0.5 && plateau_fraction < 1)) {
        throw std::invalid_argument("Plateau fraction must lie in (0.5, 1).");
    }
    const auto &t = set1.start_times_us;
    size_t n = t.size();
    auto l1 = classify_levels(set1, plateau_fraction);
    auto l2 = classify_levels(set2, plateau_fraction);

    if (!l1.high.front()) {
        throw ScanRangeError("Scan starts after the site-1 plateau; extend the grid to earlier start times.");
    }
    if (!l2.high.back()) {
        throw ScanRangeError("Scan ends before the site-2 plateau; extend the grid to later start times.");
    }
    // The plateaus run up to the last high point of set 1 and from the first
    // high point of set 2, so isolated shot-noise dips inside a plateau do not
    // cut it short.
    size_t left_end = n - 1;
    while (left_end > 0 && !l1.high[left_end]) {
        left_end--;
    }
    size_t right_start = 0;
    while (right_start + 1 < n && !l2.high[right_start]) {
        right_start++;
    }
    if (left_end + 1 >= n || right_start == 0 || l1.high.back() || l2.high.front()) {
        throw ScanRangeError("Switching plateaus are not bracketed by the scan.");
    }
    // A lone high point at the scan edge is the peak of a partial pulse, not a
    // plateau.
    if (std::count(l1.high.begin(), l1.high.begin() + left_end + 1, true) < 2 ||
        std::count(l2.high.begin() + right_start, l2.high.end(), true) < 2) {
        throw ScanRangeError("Switching plateaus need at least two points each; widen the scan.");
    }
    if (right_start <= left_end) {
        throw ScanRangeError("Site-2 plateau begins before the site-1 plateau ends.");
    }

    SwitchingAnalysis out;
    out.plateau_fraction = plateau_fraction;
    out.left_plateau_end_us = t[left_end];
    out.right_plateau_start_us = t[right_start];
    out.switching_time_us = (out.right_plateau_start_us - out.left_plateau_end_us) - set1.pulse_us;

    for (size_t j = 0; j < n; j++) {
        SwitchRegion r = SwitchRegion::Unclassified;
        if (j <= left_end && l2.dark[j]) {
            r = SwitchRegion::I;
        } else if (j >= right_start && l1.dark[j]) {
            r = SwitchRegion::V;
        } else if (!l1.dark[j] && l2.dark[j]) {
            r = SwitchRegion::II;
        } else if (!l1.dark[j] && !l2.dark[j]) {
            r = SwitchRegion::III;
        } else if (l1.dark[j] && !l2.dark[j]) {
            r = SwitchRegion::IV;
        }
        out.labels.push_back(r);
        if (out.spans.empty() || out.spans.back().region != r) {
            out.spans.push_back({r, t[j], t[j]});
        } else {
            out.spans.back().t_last_us = t[j];
        }
    }
    out.regions_in_order = out.spans.size() == 5;
    for (size_t k = 0; k < out.spans.size() && out.regions_in_order; k++) {
        out.regions_in_order = out.spans[k].region == static_cast<SwitchRegion>(k + 1);
    }
    return out;
}

SwitchingScan run_switching_scan(
    const IonChain &sites,
    const AddressingBeam &beam,
    const std::vector<double> &start_times_us,
    double pulse_1_us,
    double pulse_2_us,
    const SwitchTiming &timing,
    const ScanSettings &settings,
    double plateau_fraction) {
    SwitchingScan scan;
    scan.set1 = run_switching_curve(sites, beam, 0, start_times_us, pulse_1_us, timing, settings);
    scan.set2 = run_switching_curve(sites, beam, 1, start_times_us, pulse_2_us, timing, settings);
    scan.analysis = analyze_switching(scan.set1, scan.set2, plateau_fraction);
    return scan;
}

}  // namespace ionsim

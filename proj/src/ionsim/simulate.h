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

#ifndef IONSIM_SIMULATE_H
#define IONSIM_SIMULATE_H

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ionsim/detection.h"
#include "ionsim/drift.h"
#include "ionsim/qmath.h"
#include "ionsim/schedule.h"

namespace ionsim {

/// Fixed step for integrating the rotation angle while the beam is moving.
constexpr double kIntegrationStepUs = 0.01;

/// Rotation angle of every ion for every pulse, before drift: [pulse][ion].
using PulseAngles = std::vector<std::vector<double>>;

/// Per-ion rotation angles accumulated over each pulse of the schedule at unit
/// drift. Where the beam is stationary the integral is evaluated exactly;
/// during mirror motion a midpoint rule with step at most `step_us` is used.
///
/// Mirror commands resolve against `sites` when given, otherwise against the
/// ion positions themselves.
PulseAngles accumulate_pulse_angles(
    const IonChain &chain,
    const AddressingBeam &beam,
    const Schedule &schedule,
    double step_us = kIntegrationStepUs,
    const IonChain *sites = nullptr);

struct ShotResult {
    /// Pre-measurement state of each ion.
    std::vector<PureState> states;
    double drift_factor = 1.0;
    /// Angles actually applied, drift included: [pulse][ion].
    PulseAngles angles;
};

/// Applies the pulses to ions initialized in |0>. The drift factor scales all
/// angles of the shot.
ShotResult evolve_shot(const Schedule &schedule, const PulseAngles &unit_angles, double drift_factor);

/// One shot of the schedule with a fixed drift factor.
ShotResult simulate_shot(const IonChain &chain, const AddressingBeam &beam, const Schedule &schedule, double drift_factor);

/// One shot with the drift factor drawn for (seed, experiment, shot_index).
ShotResult simulate_shot(
    const IonChain &chain,
    const AddressingBeam &beam,
    const Schedule &schedule,
    const DriftModel &drift,
    std::uint64_t seed,
    std::uint64_t experiment,
    std::uint64_t shot_index);

struct ScanSettings {
    size_t shots = 500;
    SpamModel spam;
    DriftModel drift;
    std::uint64_t seed = 0;
};

/// Bright fraction of each ion versus pulse length, with the beam parked on
/// the target ion.
struct RabiScan {
    size_t target_site = 0;
    size_t shots = 0;
    std::vector<double> durations_us;
    /// [ion][point]
    std::vector<std::vector<size_t>> bright_counts;
    std::vector<std::vector<double>> bright_fraction;
    std::vector<std::vector<double>> std_error;
    /// Mean drift factor of the shots at each point.
    std::vector<double> mean_drift;
};

/// Shot k of point j uses global shot index j * shots + k for both the drift
/// path and the detection substream.
RabiScan run_rabi_scan(
    const IonChain &chain,
    const AddressingBeam &beam,
    size_t target_site,
    const std::vector<double> &durations_us,
    const ScanSettings &settings,
    std::string_view label = "rabi");

struct ScanRangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bright fraction of a single ion versus the start time of a fixed-length
/// pulse, while the mirrors switch from site 0 to site 1 at t = 0.
struct SwitchingCurve {
    size_t aligned_site = 0;
    double pulse_us = 0;
    std::vector<double> start_times_us;
    std::vector<size_t> bright_counts;
    std::vector<double> bright_fraction;
    std::vector<double> std_error;
};

/// The ion sits at `sites.positions[aligned_site]`; the beam starts on site 0.
SwitchingCurve run_switching_curve(
    const IonChain &sites,
    const AddressingBeam &beam,
    size_t aligned_site,
    const std::vector<double> &start_times_us,
    double pulse_us,
    const SwitchTiming &timing,
    const ScanSettings &settings,
    std::string_view label = "switching");

/// I: full pulse on site 1. II: partial on site 1 only. III: partial on both.
/// IV: partial on site 2 only. V: full pulse on site 2. 0 when no rule applies.
enum class SwitchRegion : int { Unclassified = 0, I = 1, II = 2, III = 3, IV = 4, V = 5 };

struct RegionSpan {
    SwitchRegion region;
    double t_first_us;
    double t_last_us;
};

struct SwitchingAnalysis {
    double plateau_fraction = 0.98;
    double left_plateau_end_us = 0;
    double right_plateau_start_us = 0;
    /// (right plateau start - left plateau end) - site-1 pulse length.
    double switching_time_us = 0;
    std::vector<SwitchRegion> labels;
    std::vector<RegionSpan> spans;
    bool regions_in_order = false;
};

/// A point is high when its bright fraction is >= plateau_fraction * max and
/// dark when within (1 - plateau_fraction) of the span above the minimum. The
/// site-1 plateau ends at the last high point of set 1, the site-2 plateau
/// starts at the first high point of set 2. Throws ScanRangeError when either
/// plateau is not bracketed by the scan or holds fewer than two high points.
SwitchingAnalysis analyze_switching(const SwitchingCurve &set1, const SwitchingCurve &set2, double plateau_fraction = 0.98);

struct SwitchingScan {
    SwitchingCurve set1;
    SwitchingCurve set2;
    SwitchingAnalysis analysis;
};

SwitchingScan run_switching_scan(
    const IonChain &sites,
    const AddressingBeam &beam,
    const std::vector<double> &start_times_us,
    double pulse_1_us,
    double pulse_2_us,
    const SwitchTiming &timing,
    const ScanSettings &settings,
    double plateau_fraction = 0.98);

/// Standard error of a bright fraction, sqrt(p (1 - p) / n).
double binomial_std_error(size_t bright, size_t shots);

}  // namespace ionsim

#endif

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

#ifndef IONSIM_SCHEDULE_H
#define IONSIM_SCHEDULE_H

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ionsim/mems.h"
#include "ionsim/optics.h"

namespace ionsim {

struct InvalidSiteError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Raman pulse. `phase` selects the rotation axis in the xy plane.
struct PulseEvent {
    double t_start_us = 0;
    double duration_us = 0;
    double phase = 0;
    double amplitude_scale = 1.0;

    double t_end_us() const {
        return t_start_us + duration_us;
    }
};

/// Switch the mirror voltages to the set calibrated for `target_site`.
struct MirrorCommand {
    double t_us = 0;
    size_t target_site = 0;
};

/// Timed pulses and mirror switches. Times are relative to an arbitrary
/// origin and may be negative. Before the first switch the beam sits at
/// `initial_position`; switches move it using `timing`.
struct Schedule {
    std::vector<PulseEvent> pulses;
    std::vector<MirrorCommand> switches;
    double total_duration_us = 0;
    Vec2 initial_position;
    SwitchTiming timing;

    /// Throws std::invalid_argument for overlapping or negative-length
    /// pulses, unordered switches, a short total duration, or sites outside
    /// the chain.
    void validate(size_t site_count) const;

    /// Mirror trajectories implied by the switch commands, in order. Site
    /// positions come from `sites`.
    std::vector<MirrorTrajectory> trajectories(const IonChain &sites) const;
};

/// Beam center at time t for a schedule.
Vec2 beam_center_at(const std::vector<MirrorTrajectory> &trajectories, Vec2 initial_position, double t_us);

/// One single-qubit rotation on one ion.
struct GateSpec {
    size_t site = 0;
    double phase = 0;
    double angle = 0;
};

/// Maps a negative angle to the equivalent positive rotation about the
/// opposite axis and reduces it into [0, 2pi).
GateSpec normalize_gate(GateSpec gate);

/// Sequential gates. Each change of target site issues a mirror switch and
/// waits t_s before the next pulse; gates on the current site follow
/// immediately. Pulse length is (angle / pi) times the target's pi-time with
/// the beam centered on it.
Schedule build_gate_schedule(
    const std::vector<GateSpec> &gates, const AddressingBeam &beam, const IonChain &chain, const SwitchTiming &timing);

}  // namespace ionsim

#endif

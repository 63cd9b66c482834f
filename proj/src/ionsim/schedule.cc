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

#include "ionsim/schedule.h"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace ionsim {

void Schedule::validate(size_t site_count) const {
    double last_end = -INFINITY;
    for (const auto &p : pulses) {
        if (!(p.duration_us >= 0)) {
            throw std::invalid_argument("Pulse duration must be non-negative.");
        }
        if (!(p.amplitude_scale >= 0 && p.amplitude_scale <= 1)) {
            throw std::invalid_argument("Pulse amplitude scale must lie in [0, 1].");
        }
        if (p.t_start_us < last_end) {
            throw std::invalid_argument("Pulses overlap or are out of order.");
        }
        last_end = p.t_end_us();
        if (total_duration_us < last_end) {
            throw std::invalid_argument("Schedule total duration ends before the last pulse.");
        }
    }
    double last_switch = -INFINITY;
    for (const auto &s : switches) {
        if (s.t_us < last_switch) {
            throw std::invalid_argument("Mirror commands are out of order.");
        }
        if (s.target_site >= site_count) {
            throw InvalidSiteError("Mirror command targets site " + std::to_string(s.target_site) + ".");
        }
        last_switch = s.t_us;
        if (total_duration_us < last_switch) {
            throw std::invalid_argument("Schedule total duration ends before the last switch.");
        }
    }
    timing.validate();
}

std::vector<MirrorTrajectory> Schedule::trajectories(const IonChain &sites) const {
    std::vector<MirrorTrajectory> out;
    out.reserve(switches.size());
    for (const auto &s : switches) {
        // A switch issued mid-motion starts from wherever the beam is.
        Vec2 from = beam_center_at(out, initial_position, s.t_us);
        out.push_back({from, sites.positions.at(s.target_site), s.t_us, timing});
    }
    return out;
}

Vec2 beam_center_at(const std::vector<MirrorTrajectory> &trajectories, Vec2 initial_position, double t_us) {
    const MirrorTrajectory *active = nullptr;
    for (const auto &traj : trajectories) {
        if (traj.switch_time_us <= t_us) {
            active = &traj;
        } else {
            break;
        }
    }
    return active == nullptr ? initial_position : beam_position_at(*active, t_us);
}

GateSpec normalize_gate(GateSpec gate) {
    constexpr double two_pi = 2 * std::numbers::pi;
    if (gate.angle < 0) {
        gate.angle = -gate.angle;
        gate.phase += std::numbers::pi;
    }
    gate.angle = std::fmod(gate.angle, two_pi);
    gate.phase = std::fmod(gate.phase, two_pi);
    if (gate.phase < 0) {
        gate.phase += two_pi;
    }
    return gate;
}

Schedule build_gate_schedule(
    const std::vector<GateSpec> &gates, const AddressingBeam &beam, const IonChain &chain, const SwitchTiming &timing) {
    beam.validate();
    timing.validate();
    Schedule schedule;
    schedule.initial_position = beam.center;
    schedule.timing = timing;

    double now = 0;
    std::optional<size_t> current_site;
    for (GateSpec gate : gates) {
        if (gate.site >= chain.size()) {
            throw InvalidSiteError("Gate targets site " + std::to_string(gate.site) + " outside the chain.");
        }
        gate = normalize_gate(gate);
        if (current_site != gate.site) {
            schedule.switches.push_back({now, gate.site});
            now += timing.t_s_us;
            current_site = gate.site;
        }
        Vec2 site = chain.positions[gate.site];
        double pi_time = local_pi_time(beam.centered_at(site), site);
        PulseEvent pulse{now, gate.angle / std::numbers::pi * pi_time, gate.phase, 1.0};
        schedule.pulses.push_back(pulse);
        now = pulse.t_end_us();
    }
    schedule.total_duration_us = now;
    return schedule;
}

}  // namespace ionsim

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

#include "ionsim/mems.h"

#include <cmath>
#include <numbers>
#include <string>

namespace ionsim {

void SwitchTiming::validate() const {
    if (!(t_m_us >= 0 && t_m_us < t_s_us)) {
        throw std::invalid_argument("Switch timing requires 0 <= t_m < t_s.");
    }
}

double tilt_from_voltage(double volts, double gain_rad_per_v2, double v_max) {
    if (!(volts >= 0 && volts <= v_max)) {
        throw std::out_of_range("Voltage " + std::to_string(volts) + " V is outside [0, v_max].");
    }
    return gain_rad_per_v2 * volts * volts;
}

double voltage_for_tilt(double theta, double gain_rad_per_v2, double v_max) {
    if (theta < 0) {
        throw UnreachableTargetError("Negative tilt " + std::to_string(theta) + " rad cannot be actuated.");
    }
    double v = std::sqrt(theta / gain_rad_per_v2);
    if (v > v_max) {
        throw UnreachableTargetError(
            "Tilt " + std::to_string(theta) + " rad needs " + std::to_string(v) + " V, above v_max.");
    }
    return v;
}

Vec2 position_for_voltage_set(const VoltageSet &v, const SteeringGeometry &geom, double v_max) {
    return displacement_from_tilts(
        tilt_from_voltage(v.v_x, geom.tilt_gain_rad_per_v2, v_max),
        tilt_from_voltage(v.v_y, geom.tilt_gain_rad_per_v2, v_max),
        geom);
}

std::vector<VoltageSet> calibrate_voltage_sets(const IonChain &chain, const SteeringGeometry &geom, double v_max) {
    std::vector<VoltageSet> sets;
    sets.reserve(chain.size());
    for (const Vec2 &p : chain.positions) {
        Tilts t = tilts_for_target(p, geom);
        sets.push_back({
            voltage_for_tilt(t.x, geom.tilt_gain_rad_per_v2, v_max),
            voltage_for_tilt(t.y, geom.tilt_gain_rad_per_v2, v_max),
        });
    }
    return sets;
}

Vec2 beam_position_at(const MirrorTrajectory &traj, double t_us) {
    double start = traj.motion_start_us();
    double end = traj.motion_end_us();
    if (t_us <= start) {
        return traj.from;
    }
    if (t_us >= end) {
        return traj.to;
    }
    double u = (t_us - start) / (end - start);
    double s = (1 - std::cos(std::numbers::pi * u)) / 2;
    return traj.from + (traj.to - traj.from) * s;
}

double effective_switch_time(const SwitchTiming &timing) {
    return timing.t_s_us - timing.t_m_us;
}

}  // namespace ionsim

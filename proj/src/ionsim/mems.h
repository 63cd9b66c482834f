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

#ifndef IONSIM_MEMS_H
#define IONSIM_MEMS_H

#include <vector>

#include "ionsim/optics.h"

namespace ionsim {

constexpr double kDefaultMaxVoltage = 200.0;

/// Electrode voltages for the x and y mirrors.
struct VoltageSet {
    double v_x = 0;
    double v_y = 0;
};

/// Mechanical delay `t_m_us` and settle time `t_s_us`, both measured from the
/// moment the voltages change.
struct SwitchTiming {
    double t_m_us = 0.9;
    double t_s_us = 2.0;

    void validate() const;
};

/// Beam center during one voltage-set switch: `from` until the mechanical
/// delay has elapsed, `to` once settled, raised-cosine in between.
struct MirrorTrajectory {
    Vec2 from;
    Vec2 to;
    double switch_time_us = 0;
    SwitchTiming timing;

    double motion_start_us() const {
        return switch_time_us + timing.t_m_us;
    }
    double motion_end_us() const {
        return switch_time_us + timing.t_s_us;
    }
};

/// Parallel-plate small-angle model, theta = g v^2.
double tilt_from_voltage(double volts, double gain_rad_per_v2, double v_max = kDefaultMaxVoltage);

/// Inverse of tilt_from_voltage. Throws UnreachableTargetError for negative
/// tilts (electrostatic actuation only pulls) or tilts needing more than v_max.
double voltage_for_tilt(double theta, double gain_rad_per_v2, double v_max = kDefaultMaxVoltage);

/// Beam position (ion plane) produced by a voltage set.
Vec2 position_for_voltage_set(const VoltageSet &v, const SteeringGeometry &geom, double v_max = kDefaultMaxVoltage);

/// One voltage set per ion, landing the beam center on that ion.
std::vector<VoltageSet> calibrate_voltage_sets(
    const IonChain &chain, const SteeringGeometry &geom, double v_max = kDefaultMaxVoltage);

Vec2 beam_position_at(const MirrorTrajectory &traj, double t_us);

/// Time between "full pulse on site 1" and "full pulse on site 2" less the
/// pulse length, evaluated analytically for the trajectory model: t_s - t_m.
double effective_switch_time(const SwitchTiming &timing);

}  // namespace ionsim

#endif

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

#ifndef IONSIM_OPTICS_H
#define IONSIM_OPTICS_H

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ionsim {

/// Focal-plane coordinate in micrometers.
struct Vec2 {
    double x = 0;
    double y = 0;

    Vec2 operator+(const Vec2 &o) const {
        return {x + o.x, y + o.y};
    }
    Vec2 operator-(const Vec2 &o) const {
        return {x - o.x, y - o.y};
    }
    Vec2 operator*(double s) const {
        return {x * s, y * s};
    }
    bool operator==(const Vec2 &o) const = default;
    double norm() const {
        return std::hypot(x, y);
    }
};

/// Raised whenever a target position cannot be reached by the steering optics.
struct UnreachableTargetError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Ion positions in the focal plane, plus optional per-site scatter floors.
///
/// A per-site floor, when present, replaces the beam's scatter floor for that
/// ion. It models residual light that depends on where the ion sits (stray
/// reflections, beam-shape wings) rather than on the Gaussian profile.
struct IonChain {
    std::vector<Vec2> positions;
    std::vector<double> scatter_floors;

    /// `count` ions on the x axis, the first at the origin.
    static IonChain linear(size_t count, double spacing_um);

    size_t size() const {
        return positions.size();
    }
    /// Throws std::invalid_argument on coincident positions or bad floors.
    void validate() const;
    double floor_for(size_t site, double beam_floor) const;
};

/// Gaussian addressing beam. `waist_um` is the 1/e^2 intensity radius and
/// `peak_pi_time_us` the pi-time of an ion sitting at the beam center.
struct AddressingBeam {
    Vec2 center;
    double waist_um = 3.3;
    double peak_pi_time_us = 13.0;
    double scatter_floor = 0.0;

    void validate() const;
    AddressingBeam centered_at(Vec2 point) const {
        AddressingBeam b = *this;
        b.center = point;
        return b;
    }
};

/// Fourier lens focal length, demagnification onto the ion plane, and the
/// electrostatic tilt gain of the mirrors.
struct SteeringGeometry {
    double focal_length_mm = 200.0;
    double demagnification = 54.0;
    double tilt_gain_rad_per_v2 = 2.5e-8;

    void validate() const;
};

/// Mirror tilts beyond this are outside the small-angle model.
constexpr double kSmallAngleLimitRad = 0.05;

/// Gaussian profile with a constant floor: max(exp(-2 r^2 / w0^2), s).
double relative_intensity(const AddressingBeam &beam, Vec2 point);
/// As above, but with an explicit floor replacing the beam's own.
double relative_intensity(const AddressingBeam &beam, Vec2 point, double scatter_floor);

/// Rabi rate scales with intensity, so the pi-time scales inversely.
double local_pi_time(const AddressingBeam &beam, Vec2 point);

/// Inverts P = sin^2(eps * pi * T / (2 tau)) on its first branch.
///
/// Throws std::invalid_argument for P outside [0, 1] or non-positive times, and
/// std::domain_error for a saturated population where the branch is ambiguous.
double crosstalk_from_populations(double p_neighbor, double duration_us, double target_pi_time_us);

struct WaistEstimate {
    double waist_um;
    double from_a_um;
    double from_b_um;
    /// Half the difference between the two side estimates.
    double spread_um;
};

/// Beam parked midway between ions A and B (spacing d); ion C at the beam
/// center. Each side ion gives w = (d/2) sqrt(2 / ln(tau_side / tau_c)).
WaistEstimate estimate_waist(double tau_a_us, double tau_b_us, double tau_c_us, double spacing_um);

/// Displacement (2 theta f / M) in the ion plane, in micrometers.
Vec2 displacement_from_tilts(double theta_x, double theta_y, const SteeringGeometry &geom);

struct Tilts {
    double x = 0;
    double y = 0;
};

Tilts tilts_for_target(Vec2 point, const SteeringGeometry &geom);

}  // namespace ionsim

#endif

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

#include "ionsim/optics.h"

#include <algorithm>
#include <numbers>
#include <string>

namespace ionsim {

namespace {

constexpr double kMicronsPerMillimeter = 1000.0;

void check_small_angle(double theta) {
    if (!(std::abs(theta) < kSmallAngleLimitRad)) {
        throw UnreachableTargetError(
            "Mirror tilt " + std::to_string(theta) + " rad is outside the small-angle domain.");
    }
}

}  // namespace

IonChain IonChain::linear(size_t count, double spacing_um) {
    IonChain chain;
    for (size_t k = 0; k < count; k++) {
        chain.positions.push_back({spacing_um * static_cast<double>(k), 0.0});
    }
    return chain;
}

void IonChain::validate() const {
    for (size_t i = 0; i < positions.size(); i++) {
        for (size_t j = i + 1; j < positions.size(); j++) {
            if (positions[i] == positions[j]) {
                throw std::invalid_argument("Ion positions must be pairwise distinct.");
            }
        }
    }
    if (!scatter_floors.empty() && scatter_floors.size() != positions.size()) {
        throw std::invalid_argument("Per-site scatter floors must match the ion count.");
    }
    for (double s : scatter_floors) {
        if (!(s >= 0 && s < 1)) {
            throw std::invalid_argument("Scatter floor must lie in [0, 1).");
        }
    }
}

double IonChain::floor_for(size_t site, double beam_floor) const {
    return scatter_floors.empty() ? beam_floor : scatter_floors.at(site);
}

void AddressingBeam::validate() const {
    if (!(waist_um > 0)) {
        throw std::invalid_argument("Beam waist must be positive.");
    }
    if (!(peak_pi_time_us > 0)) {
        throw std::invalid_argument("Peak pi-time must be positive.");
    }
    if (!(scatter_floor >= 0 && scatter_floor < 1)) {
        throw std::invalid_argument("Scatter floor must lie in [0, 1).");
    }
}

void SteeringGeometry::validate() const {
    if (!(focal_length_mm > 0)) {
        throw std::invalid_argument("Focal length must be positive.");
    }
    if (!(demagnification >= 1)) {
        throw std::invalid_argument("Demagnification must be at least 1.");
    }
    if (!(tilt_gain_rad_per_v2 > 0)) {
        throw std::invalid_argument("Tilt gain must be positive.");
    }
}

double relative_intensity(const AddressingBeam &beam, Vec2 point) {
    return relative_intensity(beam, point, beam.scatter_floor);
}

double relative_intensity(const AddressingBeam &beam, Vec2 point, double scatter_floor) {
    Vec2 d = point - beam.center;
    double r2 = d.x * d.x + d.y * d.y;
    double w2 = beam.waist_um * beam.waist_um;
    return std::max(std::exp(-2 * r2 / w2), scatter_floor);
}

double local_pi_time(const AddressingBeam &beam, Vec2 point) {
    return beam.peak_pi_time_us / relative_intensity(beam, point);
}

double crosstalk_from_populations(double p_neighbor, double duration_us, double target_pi_time_us) {
    if (!(p_neighbor >= 0 && p_neighbor <= 1)) {
        throw std::invalid_argument("Population must lie in [0, 1].");
    }
    if (!(duration_us > 0) || !(target_pi_time_us > 0)) {
        throw std::invalid_argument("Pulse duration and pi-time must be positive.");
    }
    // A population at the top of the fringe could equally come from the
    // rising or falling side.
    if (p_neighbor >= 1) {
        throw std::domain_error("Saturated neighbor population; first-branch inversion is ambiguous.");
    }
    double phase = std::asin(std::sqrt(p_neighbor));
    return 2 * target_pi_time_us * phase / (std::numbers::pi * duration_us);
}

WaistEstimate estimate_waist(double tau_a_us, double tau_b_us, double tau_c_us, double spacing_um) {
    if (!(tau_a_us > 0 && tau_b_us > 0 && tau_c_us > 0)) {
        throw std::invalid_argument("Pi-times must be positive.");
    }
    if (!(spacing_um > 0)) {
        throw std::invalid_argument("Ion spacing must be positive.");
    }
    auto from_side = [&](double tau_side) {
        if (!(tau_side > tau_c_us)) {
            throw std::domain_error("Side-ion pi-time must exceed the center pi-time.");
        }
        return spacing_um / 2 * std::sqrt(2 / std::log(tau_side / tau_c_us));
    };
    double wa = from_side(tau_a_us);
    double wb = from_side(tau_b_us);
    return {(wa + wb) / 2, wa, wb, std::abs(wa - wb) / 2};
}

Vec2 displacement_from_tilts(double theta_x, double theta_y, const SteeringGeometry &geom) {
    check_small_angle(theta_x);
    check_small_angle(theta_y);
    double scale = 2 * geom.focal_length_mm * kMicronsPerMillimeter / geom.demagnification;
    return {theta_x * scale, theta_y * scale};
}

Tilts tilts_for_target(Vec2 point, const SteeringGeometry &geom) {
    double scale = 2 * geom.focal_length_mm * kMicronsPerMillimeter / geom.demagnification;
    Tilts t{point.x / scale, point.y / scale};
    check_small_angle(t.x);
    check_small_angle(t.y);
    return t;
}

}  // namespace ionsim

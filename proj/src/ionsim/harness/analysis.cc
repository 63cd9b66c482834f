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

#include "ionsim/harness/analysis.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ionsim {

namespace {

double model_population(double eps, double t_us, double tau_us) {
    double s = std::sin(eps * std::numbers::pi * t_us / (2 * tau_us));
    return s * s;
}

}  // namespace

CrosstalkFit fit_neighbor_crosstalk(
    const std::vector<double> &durations_us,
    const std::vector<size_t> &bright_counts,
    size_t shots,
    double target_pi_time_us,
    const SpamModel &spam) {
    if (durations_us.size() != bright_counts.size() || durations_us.empty()) {
        throw std::invalid_argument("Crosstalk fit needs one count per duration.");
    }
    if (shots == 0 || !(target_pi_time_us > 0)) {
        throw std::invalid_argument("Crosstalk fit needs shots and a positive pi-time.");
    }
    for (size_t k : bright_counts) {
        if (k > shots) {
            throw std::invalid_argument("Bright count exceeds shot count.");
        }
    }
    double t_max = *std::max_element(durations_us.begin(), durations_us.end());
    if (!(t_max > 0)) {
        throw std::invalid_argument("Crosstalk fit needs a positive duration.");
    }
    double n = static_cast<double>(shots);

    auto nll = [&](double eps) {
        double total = 0;
        for (size_t j = 0; j < durations_us.size(); j++) {
            double p = spam.bright_probability(model_population(eps, durations_us[j], target_pi_time_us));
            p = std::clamp(p, 1e-12, 1 - 1e-12);
            double k = static_cast<double>(bright_counts[j]);
            total -= k * std::log(p) + (n - k) * std::log(1 - p);
        }
        return total;
    };

    // Coarse grid to land in the right basin, then golden-section refinement.
    double hi = target_pi_time_us / t_max;
    constexpr size_t grid = 400;
    size_t best = 0;
    double best_value = INFINITY;
    for (size_t g = 0; g <= grid; g++) {
        double v = nll(hi * static_cast<double>(g) / grid);
        if (v < best_value) {
            best_value = v;
            best = g;
        }
    }
    double a = hi * static_cast<double>(best == 0 ? 0 : best - 1) / grid;
    double b = hi * static_cast<double>(std::min(best + 1, grid)) / grid;
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = nll(c);
    double fd = nll(d);
    for (int it = 0; it < 200 && b - a > 1e-15; it++) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = nll(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = nll(d);
        }
    }
    CrosstalkFit fit;
    fit.crosstalk = (a + b) / 2;
    double h = std::max(fit.crosstalk * 1e-3, hi * 1e-6);
    double lo_eps = std::max(fit.crosstalk - h, 0.0);
    double mid_eps = lo_eps + h;
    double curvature = (nll(mid_eps + h) - 2 * nll(mid_eps) + nll(lo_eps)) / (h * h);
    fit.std_error = curvature > 0 ? 1 / std::sqrt(curvature) : INFINITY;
    fit.duration_at_end_us = durations_us.back();
    fit.population_at_end = model_population(fit.crosstalk, fit.duration_at_end_us, target_pi_time_us);
    return fit;
}

std::vector<double> scan_grid(double start, double stop, double step) {
    if (!(step > 0) || !(stop >= start)) {
        throw std::invalid_argument("Scan grid needs step > 0 and stop >= start.");
    }
    std::vector<double> out;
    for (size_t k = 0;; k++) {
        double t = start + static_cast<double>(k) * step;
        if (t > stop + step * 1e-9) {
            break;
        }
        // Snap to 1e-9 us so grid points like 0 come out exact.
        out.push_back(std::round(std::min(t, stop) * 1e9) / 1e9);
    }
    if (stop - out.back() > step * 1e-9) {
        out.push_back(stop);
    }
    return out;
}

}  // namespace ionsim

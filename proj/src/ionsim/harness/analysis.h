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

#ifndef IONSIM_HARNESS_ANALYSIS_H
#define IONSIM_HARNESS_ANALYSIS_H

#include <cstddef>
#include <vector>

#include "ionsim/detection.h"

namespace ionsim {

/// Maximum-likelihood fit of a neighbor ion's Rabi curve,
/// P_bright(T) = spam(sin^2(eps * pi * T / (2 tau))), over every scan point.
struct CrosstalkFit {
    double crosstalk = 0;
    /// Standard error from the curvature of the log-likelihood.
    double std_error = 0;
    /// Fitted ion population (SPAM removed) at the last scan duration.
    double population_at_end = 0;
    double duration_at_end_us = 0;
};

/// Only the first fringe branch is searched: eps * T_max < tau.
CrosstalkFit fit_neighbor_crosstalk(
    const std::vector<double> &durations_us,
    const std::vector<size_t> &bright_counts,
    size_t shots,
    double target_pi_time_us,
    const SpamModel &spam);

/// start, start + step, ... up to stop; stop is appended when off-grid.
/// Points are computed as start + k * step to avoid accumulated rounding.
std::vector<double> scan_grid(double start, double stop, double step);

}  // namespace ionsim

#endif

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

#ifndef IONSIM_DRIFT_H
#define IONSIM_DRIFT_H

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ionsim {

/// Slow laser-intensity drift at the ion: an Ornstein-Uhlenbeck process x(t)
/// with stationary std `sigma_rel`, evaluated once per shot on the experiment
/// clock (shot k starts at k * shot_period_us). The drift factor is 1 + x.
struct DriftModel {
    double sigma_rel = 0.01;
    double correlation_time_us = 1e6;
    double shot_period_us = 1e5;

    static DriftModel none() {
        return {0.0, 1e6, 1e5};
    }
    void validate() const;
    /// Correlation between consecutive shots, exp(-period / correlation_time).
    double shot_correlation() const;
};

/// Drift factors for shots [0, count) of one experiment. Generated with the
/// exact OU transition, so the path is stationary from the first shot.
class DriftPath {
   public:
    DriftPath(const DriftModel &model, std::uint64_t seed, std::uint64_t experiment, size_t count);

    double factor(size_t shot_index) const {
        return factors_.at(shot_index);
    }
    size_t size() const {
        return factors_.size();
    }
    const std::vector<double> &factors() const {
        return factors_;
    }

   private:
    std::vector<double> factors_;
};

/// Drift factor of a single shot. Equal to DriftPath(model, seed, experiment,
/// n).factor(shot_index) for any n > shot_index.
double sample_drift(const DriftModel &model, std::uint64_t seed, std::uint64_t experiment, std::uint64_t shot_index);

}  // namespace ionsim

#endif

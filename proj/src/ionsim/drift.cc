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

#include "ionsim/drift.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ionsim/random.h"

namespace ionsim {

namespace {

constexpr std::uint64_t kDriftStream = 0xD81F7ULL;

}  // namespace

void DriftModel::validate() const {
    if (!(sigma_rel >= 0)) {
        throw std::invalid_argument("Drift sigma_rel must be non-negative.");
    }
    if (!(correlation_time_us > 0)) {
        throw std::invalid_argument("Drift correlation time must be positive.");
    }
    if (!(shot_period_us > 0)) {
        throw std::invalid_argument("Shot period must be positive.");
    }
}

double DriftModel::shot_correlation() const {
    return std::exp(-shot_period_us / correlation_time_us);
}

DriftPath::DriftPath(const DriftModel &model, std::uint64_t seed, std::uint64_t experiment, size_t count) {
    model.validate();
    factors_.assign(count, 1.0);
    if (model.sigma_rel == 0 || count == 0) {
        return;
    }
    // One sequential generator per experiment; the path is cheap to build
    // before any parallel shot evaluation starts.
    auto rng = substream(seed, experiment ^ kDriftStream, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    double a = model.shot_correlation();
    double kick = model.sigma_rel * std::sqrt(1 - a * a);
    double x = model.sigma_rel * normal(rng);
    factors_[0] = 1 + x;
    for (size_t k = 1; k < count; k++) {
        x = a * x + kick * normal(rng);
        factors_[k] = 1 + x;
    }
}

double sample_drift(const DriftModel &model, std::uint64_t seed, std::uint64_t experiment, std::uint64_t shot_index) {
    return DriftPath(model, seed, experiment, static_cast<size_t>(shot_index) + 1).factor(shot_index);
}

}  // namespace ionsim

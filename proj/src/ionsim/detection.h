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

#ifndef IONSIM_DETECTION_H
#define IONSIM_DETECTION_H

#include <random>

namespace ionsim {

/// State-dependent fluorescence readout errors. `f0` lumps preparation and
/// dark-state detection; `f1` is the bright-state detection fidelity.
struct SpamModel {
    double f0 = 0.998;
    double f1 = 0.991;

    static SpamModel ideal() {
        return {1.0, 1.0};
    }
    void validate() const;

    /// P(bright) = P f1 + (1 - P)(1 - f0).
    double bright_probability(double p_one) const {
        return p_one * f1 + (1 - p_one) * (1 - f0);
    }
    /// Inverse of bright_probability.
    double population_from_bright(double p_bright) const {
        return (p_bright - (1 - f0)) / (f0 + f1 - 1);
    }
};

/// One fluorescence detection. Returns true for a bright outcome.
bool detect(double p_one, const SpamModel &spam, std::mt19937_64 &rng);

}  // namespace ionsim

#endif

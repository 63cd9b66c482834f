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

#include "ionsim/detection.h"

#include <algorithm>
#include <stdexcept>

#include "ionsim/qmath.h"

namespace ionsim {

void SpamModel::validate() const {
    if (!(f0 > 0.5 && f0 <= 1 && f1 > 0.5 && f1 <= 1)) {
        throw std::invalid_argument("SPAM fidelities must lie in (0.5, 1].");
    }
}

bool detect(double p_one, const SpamModel &spam, std::mt19937_64 &rng) {
    if (!(p_one >= -kAlgebraTolerance && p_one <= 1 + kAlgebraTolerance)) {
        throw std::invalid_argument("Population must lie in [0, 1].");
    }
    p_one = std::clamp(p_one, 0.0, 1.0);
    std::bernoulli_distribution bright(spam.bright_probability(p_one));
    return bright(rng);
}

}  // namespace ionsim

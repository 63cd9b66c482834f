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

#ifndef IONSIM_RANDOM_H
#define IONSIM_RANDOM_H

#include <cstdint>
#include <random>
#include <string_view>

namespace ionsim {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Stable 64-bit id for an experiment label (FNV-1a).
std::uint64_t experiment_id(std::string_view label);

/// Seed of the substream owned by (seed, experiment, index). Every shot of
/// every experiment draws from its own substream, so results do not depend on
/// the order in which shots are evaluated.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t experiment, std::uint64_t index);

/// Generator for one substream.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t experiment, std::uint64_t index);

}  // namespace ionsim

#endif

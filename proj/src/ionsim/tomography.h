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

#ifndef IONSIM_TOMOGRAPHY_H
#define IONSIM_TOMOGRAPHY_H

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ionsim/detection.h"
#include "ionsim/drift.h"
#include "ionsim/qmath.h"
#include "ionsim/schedule.h"

namespace ionsim {

enum class Basis : int { Z = 0, X = 1, Y = 2 };

constexpr std::array<Basis, 3> kAllBases{Basis::Z, Basis::X, Basis::Y};

const char *basis_name(Basis b);

struct MissingBasisError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Pre-rotation applied before fluorescence detection to measure a basis.
struct Prerotation {
    Basis basis;
    /// Drive phase and angle, as scheduled on the ion.
    double phase;
    double angle;
    Unitary2 unitary;
};

/// [(Z, I), (Y, R_x(pi/2)), (X, R_y(pi/2))]. After pre-rotation G the bright
/// probability is <1| G rho G^dagger |1>.
std::vector<Prerotation> measurement_prerotations();

const Prerotation &prerotation_for(Basis b);

struct BasisCounts {
    std::uint64_t shots = 0;
    std::uint64_t bright = 0;

    double fraction() const {
        return shots == 0 ? 0.0 : static_cast<double>(bright) / static_cast<double>(shots);
    }
};

/// Counts of one ion, indexed by Basis.
struct CountsTable {
    std::array<BasisCounts, 3> bases{};

    BasisCounts &operator[](Basis b) {
        return bases[static_cast<size_t>(b)];
    }
    const BasisCounts &operator[](Basis b) const {
        return bases[static_cast<size_t>(b)];
    }
    void validate() const;
};

/// Bright probabilities indexed by Basis.
using BasisProbabilities = std::array<double, 3>;

/// r_z = 1 - 2 P_Z, r_y = 1 - 2 P_Y, r_x = 2 P_X - 1. No SPAM correction.
BlochVector bloch_from_probabilities(const BasisProbabilities &p);

/// Linear inversion of the bright fractions. Throws MissingBasisError if a
/// basis has no shots.
BlochVector bloch_from_counts(const CountsTable &counts);

/// Exact bright probabilities of `rho` in each basis under the SPAM map.
BasisProbabilities expected_bright_probabilities(const DensityMatrix &rho, const SpamModel &spam);

/// Closest physical density matrix in Frobenius norm. For one qubit this is
/// radial: |r| > 1 is rescaled to the unit sphere, anything else is kept.
DensityMatrix project_physical(const BlochVector &raw);
/// As above for a Hermitian unit-trace matrix.
DensityMatrix project_physical(const DensityMatrix &raw);

struct FidelityEstimate {
    double fidelity = 0;
    /// 16th and 84th percentiles of the bootstrap distribution, widened to
    /// contain the point estimate.
    double ci_low = 0;
    double ci_high = 0;
    /// First-order binomial error propagation through the linear inversion.
    double analytic_std_error = 0;
};

/// Point fidelity of the projected reconstruction against `ideal`, with a
/// bootstrap over the per-basis binomial counts.
FidelityEstimate fidelity_with_ci(
    const CountsTable &counts, const PureState &ideal, size_t resamples, std::uint64_t seed);

struct TomographyResult {
    CountsTable counts;
    BlochVector raw;
    DensityMatrix physical = DensityMatrix::maximally_mixed();
    PureState ideal;
    FidelityEstimate estimate;
};

struct GateAngles {
    double phase = 0;
    double angle = 0;
};

struct TomographySettings {
    size_t shots_per_basis = 2000;
    size_t bootstrap_resamples = 1000;
    SpamModel spam;
    DriftModel drift;
    std::uint64_t seed = 0;
};

/// Gate A on ion 0, gate B on ion 1, then the basis pre-rotation on ion 0 and
/// ion 1, then parallel detection; repeated for each basis. Returns one
/// result per ion.
std::vector<TomographyResult> run_tomography_experiment(
    const GateAngles &gate_a,
    const GateAngles &gate_b,
    const IonChain &chain,
    const AddressingBeam &beam,
    const SwitchTiming &timing,
    const TomographySettings &settings);

}  // namespace ionsim

#endif

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

#include "ionsim/tomography.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ionsim/parallel.h"
#include "ionsim/random.h"
#include "ionsim/simulate.h"

namespace ionsim {

const char *basis_name(Basis b) {
    switch (b) {
        case Basis::Z:
            return "Z";
        case Basis::X:
            return "X";
        case Basis::Y:
            return "Y";
    }
    return "?";
}

std::vector<Prerotation> measurement_prerotations() {
    constexpr double half_pi = std::numbers::pi / 2;
    return {
        {Basis::Z, 0.0, 0.0, Unitary2::identity()},
        {Basis::Y, 0.0, half_pi, rotation_gate(0.0, half_pi)},
        {Basis::X, half_pi, half_pi, rotation_gate(half_pi, half_pi)},
    };
}

const Prerotation &prerotation_for(Basis b) {
    static const std::vector<Prerotation> table = measurement_prerotations();
    for (const auto &p : table) {
        if (p.basis == b) {
            return p;
        }
    }
    throw std::invalid_argument("Unknown basis.");
}

void CountsTable::validate() const {
    for (Basis b : kAllBases) {
        const auto &c = (*this)[b];
        if (c.shots == 0) {
            throw MissingBasisError(std::string("No shots recorded in basis ") + basis_name(b) + ".");
        }
        if (c.bright > c.shots) {
            throw std::invalid_argument("Bright count exceeds shot count.");
        }
    }
}

BlochVector bloch_from_probabilities(const BasisProbabilities &p) {
    return {
        2 * p[static_cast<size_t>(Basis::X)] - 1,
        1 - 2 * p[static_cast<size_t>(Basis::Y)],
        1 - 2 * p[static_cast<size_t>(Basis::Z)],
    };
}

BlochVector bloch_from_counts(const CountsTable &counts) {
    counts.validate();
    BasisProbabilities p{};
    for (Basis b : kAllBases) {
        p[static_cast<size_t>(b)] = counts[b].fraction();
    }
    return bloch_from_probabilities(p);
}

BasisProbabilities expected_bright_probabilities(const DensityMatrix &rho, const SpamModel &spam) {
    BasisProbabilities out{};
    for (const auto &pre : measurement_prerotations()) {
        double p_one = apply(pre.unitary, rho).matrix()(1, 1).real();
        out[static_cast<size_t>(pre.basis)] = spam.bright_probability(std::clamp(p_one, 0.0, 1.0));
    }
    return out;
}

DensityMatrix project_physical(const BlochVector &raw) {
    double n = raw.norm();
    if (n <= 1) {
        return density_from_bloch(raw);
    }
    return density_from_bloch(raw * (1 / n));
}

DensityMatrix project_physical(const DensityMatrix &raw) {
    return project_physical(bloch_from_density(raw));
}

namespace {

double fidelity_from_fractions(const BasisProbabilities &p, const PureState &ideal) {
    return fidelity_pure(project_physical(bloch_from_probabilities(p)), ideal);
}

double percentile(const std::vector<double> &sorted, double q) {
    double pos = q * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<size_t>(std::floor(pos));
    size_t hi = std::min(lo + 1, sorted.size() - 1);
    double w = pos - static_cast<double>(lo);
    return sorted[lo] * (1 - w) + sorted[hi] * w;
}

}  // namespace

FidelityEstimate fidelity_with_ci(
    const CountsTable &counts, const PureState &ideal, size_t resamples, std::uint64_t seed) {
    counts.validate();
    if (resamples < 100) {
        throw std::invalid_argument("Bootstrap needs at least 100 resamples.");
    }
    BasisProbabilities p{};
    for (Basis b : kAllBases) {
        p[static_cast<size_t>(b)] = counts[b].fraction();
    }

    FidelityEstimate est;
    est.fidelity = fidelity_from_fractions(p, ideal);

    BlochVector target = bloch_from_pure(ideal);
    // dF/dP for each basis through the linear inversion.
    std::array<double, 3> slope{};
    slope[static_cast<size_t>(Basis::Z)] = -target.z;
    slope[static_cast<size_t>(Basis::X)] = target.x;
    slope[static_cast<size_t>(Basis::Y)] = -target.y;
    double var = 0;
    for (Basis b : kAllBases) {
        size_t k = static_cast<size_t>(b);
        var += slope[k] * slope[k] * p[k] * (1 - p[k]) / static_cast<double>(counts[b].shots);
    }
    est.analytic_std_error = std::sqrt(var);

    std::uint64_t exp_id = experiment_id("bootstrap");
    std::vector<double> samples(resamples);
    parallel_for(resamples, [&](size_t r) {
        auto rng = substream(seed, exp_id, r);
        BasisProbabilities q{};
        for (Basis b : kAllBases) {
            const auto &c = counts[b];
            std::binomial_distribution<std::uint64_t> draw(c.shots, c.fraction());
            q[static_cast<size_t>(b)] = static_cast<double>(draw(rng)) / static_cast<double>(c.shots);
        }
        samples[r] = fidelity_from_fractions(q, ideal);
    });
    std::sort(samples.begin(), samples.end());
    est.ci_low = std::min(percentile(samples, 0.16), est.fidelity);
    est.ci_high = std::max(percentile(samples, 0.84), est.fidelity);
    return est;
}

std::vector<TomographyResult> run_tomography_experiment(
    const GateAngles &gate_a,
    const GateAngles &gate_b,
    const IonChain &chain,
    const AddressingBeam &beam,
    const SwitchTiming &timing,
    const TomographySettings &settings) {
    if (chain.size() < 2) {
        throw std::invalid_argument("Tomography experiment needs two ions.");
    }
    if (settings.shots_per_basis == 0) {
        throw std::invalid_argument("Tomography needs at least one shot per basis.");
    }
    settings.spam.validate();

    size_t shots = settings.shots_per_basis;
    std::uint64_t exp_id = experiment_id("tomography");
    DriftPath drift(settings.drift, settings.seed, exp_id, kAllBases.size() * shots);

    std::vector<CountsTable> counts(chain.size());
    for (size_t bi = 0; bi < kAllBases.size(); bi++) {
        Basis basis = kAllBases[bi];
        const Prerotation &pre = prerotation_for(basis);
        std::vector<GateSpec> gates{
            {0, gate_a.phase, gate_a.angle},
            {1, gate_b.phase, gate_b.angle},
            {0, pre.phase, pre.angle},
            {1, pre.phase, pre.angle},
        };
        Schedule schedule = build_gate_schedule(gates, beam, chain, timing);
        PulseAngles angles = accumulate_pulse_angles(chain, beam, schedule);

        std::vector<std::vector<std::uint8_t>> outcomes(shots, std::vector<std::uint8_t>(chain.size(), 0));
        parallel_for(shots, [&](size_t k) {
            size_t index = bi * shots + k;
            auto shot = evolve_shot(schedule, angles, drift.factor(index));
            auto rng = substream(settings.seed, exp_id, index);
            for (size_t i = 0; i < chain.size(); i++) {
                outcomes[k][i] = detect(shot.states[i].p1(), settings.spam, rng) ? 1 : 0;
            }
        });
        for (size_t i = 0; i < chain.size(); i++) {
            auto &c = counts[i][basis];
            c.shots = shots;
            for (size_t k = 0; k < shots; k++) {
                c.bright += outcomes[k][i];
            }
        }
    }

    std::vector<TomographyResult> results;
    std::array<GateAngles, 2> applied{gate_a, gate_b};
    for (size_t i = 0; i < 2; i++) {
        TomographyResult r;
        r.counts = counts[i];
        r.raw = bloch_from_counts(r.counts);
        r.physical = project_physical(r.raw);
        r.ideal = rotation_gate(applied[i].phase, applied[i].angle).apply(PureState::zero());
        r.estimate = fidelity_with_ci(
            r.counts, r.ideal, settings.bootstrap_resamples, substream_seed(settings.seed, exp_id ^ 0xB007ULL, i));
        results.push_back(r);
    }
    return results;
}

}  // namespace ionsim

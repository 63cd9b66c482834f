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
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "gtest/gtest.h"
#include "ionsim/random.h"

using namespace ionsim;

namespace {

constexpr double kPi = std::numbers::pi;

PureState random_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Complex a{g(rng), g(rng)};
    Complex b{g(rng), g(rng)};
    double n = std::sqrt(std::norm(a) + std::norm(b));
    return PureState::from_amplitudes(a / n, b / n);
}

/// Closest PSD unit-trace matrix in Frobenius norm: eigendecompose, project
/// the eigenvalues onto the probability simplex, rebuild.
Eigen::Matrix2cd clip_oracle(const Eigen::Matrix2cd &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(m);
    std::vector<double> lam{solver.eigenvalues()(0), solver.eigenvalues()(1)};
    std::vector<double> sorted = lam;
    std::sort(sorted.rbegin(), sorted.rend());
    double cum = 0;
    double shift = 0;
    for (size_t k = 0; k < sorted.size(); k++) {
        cum += sorted[k];
        double candidate = (cum - 1) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0) {
            shift = candidate;
        }
    }
    Eigen::Vector2d clipped(std::max(lam[0] - shift, 0.0), std::max(lam[1] - shift, 0.0));
    return solver.eigenvectors() * clipped.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

CountsTable counts_from(const BasisProbabilities &p, std::uint64_t shots) {
    CountsTable c;
    for (Basis b : kAllBases) {
        c[b].shots = shots;
        c[b].bright = static_cast<std::uint64_t>(std::llround(p[static_cast<size_t>(b)] * static_cast<double>(shots)));
    }
    return c;
}

CountsTable sample_counts(const BasisProbabilities &p, std::uint64_t shots, std::mt19937_64 &rng) {
    CountsTable c;
    for (Basis b : kAllBases) {
        std::binomial_distribution<std::uint64_t> draw(shots, p[static_cast<size_t>(b)]);
        c[b].shots = shots;
        c[b].bright = draw(rng);
    }
    return c;
}

PureState x90_state() {
    return rotation_gate(0, kPi / 2).apply(PureState::zero());
}

}  // namespace

TEST(tomography, prerotation_conventions) {
    auto pre = measurement_prerotations();
    ASSERT_EQ(pre.size(), 3u);
    EXPECT_EQ(pre[0].basis, Basis::Z);
    EXPECT_LT(pre[0].unitary.matrix().max_abs_diff(Matrix2::identity()), 1e-15);
    EXPECT_EQ(pre[1].basis, Basis::Y);
    EXPECT_LT(pre[1].unitary.matrix().max_abs_diff(rotation_gate(0, kPi / 2).matrix()), 1e-15);
    EXPECT_EQ(pre[2].basis, Basis::X);
    EXPECT_LT(pre[2].unitary.matrix().max_abs_diff(rotation_gate(kPi / 2, kPi / 2).matrix()), 1e-15);
}

TEST(tomography, prerotation_examples) {
    auto ideal = SpamModel::ideal();
    double r = 1 / std::sqrt(2.0);
    auto p0 = expected_bright_probabilities(DensityMatrix::from_pure(PureState::zero()), ideal);
    EXPECT_NEAR(p0[static_cast<size_t>(Basis::Z)], 0, 1e-15);
    auto plus = expected_bright_probabilities(DensityMatrix::from_pure(PureState::from_amplitudes(r, r)), ideal);
    EXPECT_NEAR(plus[static_cast<size_t>(Basis::X)], 1, 1e-15);
    auto plus_i =
        expected_bright_probabilities(DensityMatrix::from_pure(PureState::from_amplitudes(r, Complex(0, r))), ideal);
    EXPECT_NEAR(plus_i[static_cast<size_t>(Basis::Y)], 0, 1e-15);
}

TEST(tomography, inversion_examples) {
    BasisProbabilities zero{};
    zero[static_cast<size_t>(Basis::Z)] = 0;
    zero[static_cast<size_t>(Basis::X)] = 0.5;
    zero[static_cast<size_t>(Basis::Y)] = 0.5;
    BlochVector r0 = bloch_from_probabilities(zero);
    EXPECT_EQ(r0.x, 0);
    EXPECT_EQ(r0.y, 0);
    EXPECT_EQ(r0.z, 1);

    BasisProbabilities distorted{};
    distorted[static_cast<size_t>(Basis::Z)] = 0.5;
    distorted[static_cast<size_t>(Basis::Y)] = 0.991;
    distorted[static_cast<size_t>(Basis::X)] = 0.4965;
    BlochVector r1 = bloch_from_probabilities(distorted);
    EXPECT_NEAR(r1.x, -0.007, 1e-12);
    EXPECT_NEAR(r1.y, -0.982, 1e-12);
    EXPECT_NEAR(r1.z, 0.0, 1e-12);

    BlochVector r2 = bloch_from_probabilities({1, 1, 1});
    EXPECT_EQ(r2.x, 1);
    EXPECT_EQ(r2.y, -1);
    EXPECT_EQ(r2.z, -1);
    EXPECT_FALSE(r2.is_physical());
}

TEST(tomography, counts_need_every_basis) {
    CountsTable c;
    c[Basis::Z] = {100, 3};
    c[Basis::X] = {100, 50};
    EXPECT_THROW(bloch_from_counts(c), MissingBasisError);
    c[Basis::Y] = {100, 101};
    EXPECT_THROW(bloch_from_counts(c), std::invalid_argument);
    c[Basis::Y] = {100, 50};
    BlochVector r = bloch_from_counts(c);
    EXPECT_NEAR(r.z, 0.94, 1e-15);
}

TEST(tomography, projection_examples) {
    DensityMatrix keep = project_physical(BlochVector{0.3, -0.2, 0.5});
    BlochVector r = bloch_from_density(keep);
    EXPECT_NEAR(r.x, 0.3, 1e-15);
    EXPECT_NEAR(r.y, -0.2, 1e-15);
    EXPECT_NEAR(r.z, 0.5, 1e-15);
    BlochVector scaled = bloch_from_density(project_physical(BlochVector{1.2, 0, 0}));
    EXPECT_NEAR(scaled.x, 1, 1e-15);
    EXPECT_EQ(scaled.y, 0);
    EXPECT_EQ(scaled.z, 0);
    EXPECT_LT(
        project_physical(BlochVector{0, 0, 0}).matrix().max_abs_diff(DensityMatrix::maximally_mixed().matrix()), 1e-15);
}

TEST(tomography, projection_matches_eigenvalue_clipping) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g(0, 0.8);
    for (int k = 0; k < 1000; k++) {
        BlochVector raw{g(rng), g(rng), g(rng)};
        Matrix2 got = project_physical(raw).matrix();
        const Matrix2 m = density_from_bloch(raw).matrix();
        Eigen::Matrix2cd in;
        in << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
        Eigen::Matrix2cd expected = clip_oracle(in);
        double frob = 0;
        for (size_t i = 0; i < 2; i++) {
            for (size_t j = 0; j < 2; j++) {
                frob += std::norm(got(i, j) - expected(i, j));
            }
        }
        EXPECT_LT(std::sqrt(frob), 1e-9);
    }
}

TEST(tomography, projection_is_idempotent_and_helps) {
    std::mt19937_64 rng(32);
    std::normal_distribution<double> g(0, 1);
    for (int k = 0; k < 200; k++) {
        BlochVector raw{g(rng), g(rng), g(rng)};
        DensityMatrix once = project_physical(raw);
        DensityMatrix twice = project_physical(once);
        EXPECT_LT(once.matrix().max_abs_diff(twice.matrix()), 1e-15);
        EXPECT_TRUE(once.is_physical());
        EXPECT_NEAR(once.matrix().trace().real(), 1, 1e-12);
        if (raw.norm() > 1) {
            // The closest pure state lies along raw; projecting cannot move away from it.
            BlochVector dir = raw * (1 / raw.norm());
            double before = (1 + raw.dot(dir)) / 2;
            double after = (1 + bloch_from_density(once).dot(dir)) / 2;
            EXPECT_GE(after, std::min(before, 1.0) - 1e-12);
        }
    }
}

TEST(tomography, identity_property) {
    std::mt19937_64 rng(33);
    for (int k = 0; k < 100; k++) {
        PureState psi = random_state(rng);
        auto p = expected_bright_probabilities(DensityMatrix::from_pure(psi), SpamModel::ideal());
        DensityMatrix rec = project_physical(bloch_from_probabilities(p));
        EXPECT_GE(fidelity_pure(rec, psi), 1 - 1e-9);
    }
}

TEST(tomography, spam_closed_form) {
    // R_x(pi/2)|0> has r = (0, -1, 0). Ideal bright probabilities per basis:
    // Z 1/2, Y 1, X 1/2. Through P_b = P F1 + (1 - P)(1 - F0) with F0 = 0.998,
    // F1 = 0.991: Z 0.4965, Y 0.991, X 0.4965, hence r = (-0.007, -0.982,
    // 0.007), |r| < 1, and F = (1 + 0.982) / 2 = 0.991.
    auto p = expected_bright_probabilities(DensityMatrix::from_pure(x90_state()), SpamModel{});
    EXPECT_NEAR(p[static_cast<size_t>(Basis::Z)], 0.4965, 1e-12);
    EXPECT_NEAR(p[static_cast<size_t>(Basis::Y)], 0.991, 1e-12);
    EXPECT_NEAR(p[static_cast<size_t>(Basis::X)], 0.4965, 1e-12);
    BlochVector r = bloch_from_probabilities(p);
    EXPECT_NEAR(r.x, -0.007, 1e-12);
    EXPECT_NEAR(r.y, -0.982, 1e-12);
    EXPECT_NEAR(r.z, 0.007, 1e-12);
    EXPECT_NEAR(fidelity_pure(project_physical(r), x90_state()), 0.991, 1e-12);
}

TEST(tomography, exact_counts_give_tight_interval) {
    auto p = expected_bright_probabilities(DensityMatrix::from_pure(x90_state()), SpamModel::ideal());
    FidelityEstimate est = fidelity_with_ci(counts_from(p, 1000000), x90_state(), 200, 1);
    EXPECT_NEAR(est.fidelity, 1, 1e-12);
    EXPECT_LE(est.ci_low, est.fidelity);
    EXPECT_GE(est.ci_high, est.fidelity);
    EXPECT_LT(est.ci_high - est.ci_low, 1e-3);
}

TEST(tomography, interval_width_at_two_thousand_shots) {
    auto p = expected_bright_probabilities(DensityMatrix::from_pure(x90_state()), SpamModel{});
    FidelityEstimate est = fidelity_with_ci(counts_from(p, 2000), x90_state(), 1000, 2);
    double half = (est.ci_high - est.ci_low) / 2;
    EXPECT_GT(half, 0.001);
    EXPECT_LT(half, 0.006);
    EXPECT_NEAR(half, est.analytic_std_error, 0.001);
}

TEST(tomography, bootstrap_is_deterministic) {
    auto p = expected_bright_probabilities(DensityMatrix::from_pure(x90_state()), SpamModel{});
    CountsTable c = counts_from(p, 2000);
    FidelityEstimate a = fidelity_with_ci(c, x90_state(), 500, 7);
    FidelityEstimate b = fidelity_with_ci(c, x90_state(), 500, 7);
    EXPECT_EQ(a.ci_low, b.ci_low);
    EXPECT_EQ(a.ci_high, b.ci_high);
    EXPECT_THROW(fidelity_with_ci(c, x90_state(), 99, 7), std::invalid_argument);
}

TEST(tomography, bootstrap_coverage) {
    auto p = expected_bright_probabilities(DensityMatrix::from_pure(x90_state()), SpamModel{});
    double truth = fidelity_pure(project_physical(bloch_from_probabilities(p)), x90_state());
    std::mt19937_64 rng(34);
    int covered = 0;
    for (int rep = 0; rep < 100; rep++) {
        CountsTable c = sample_counts(p, 2000, rng);
        FidelityEstimate est = fidelity_with_ci(c, x90_state(), 1000, 100 + rep);
        covered += (est.ci_low <= truth && truth <= est.ci_high) ? 1 : 0;
    }
    EXPECT_GE(covered, 60);
}

TEST(tomography, noiseless_experiment) {
    IonChain chain = IonChain::linear(2, 7.4);
    AddressingBeam beam;
    beam.peak_pi_time_us = 13;
    TomographySettings settings{100000, 200, SpamModel::ideal(), DriftModel{}, 3};
    auto res = run_tomography_experiment({0, kPi / 2}, {0, 0}, chain, beam, SwitchTiming{}, settings);
    ASSERT_EQ(res.size(), 2u);
    EXPECT_NEAR(res[0].estimate.fidelity, 1.0, 0.001);
    EXPECT_NEAR(res[1].estimate.fidelity, 1.0, 0.001);
}

TEST(tomography, default_spam_rows) {
    IonChain chain = IonChain::linear(2, 7.4);
    chain.scatter_floors = {2.9e-4, 1.3e-4};
    AddressingBeam beam;
    beam.peak_pi_time_us = 13;
    TomographySettings settings{2000, 1000, SpamModel{}, DriftModel{}, 4};
    auto row3 = run_tomography_experiment({0, kPi}, {kPi / 2, kPi / 2}, chain, beam, SwitchTiming{}, settings);
    for (const auto &r : row3) {
        EXPECT_GE(r.estimate.fidelity, 0.985);
        EXPECT_LE(r.estimate.fidelity, 0.996);
        EXPECT_TRUE(r.physical.is_physical());
        EXPECT_NEAR(r.physical.matrix().trace().real(), 1, 1e-9);
        EXPECT_LE(r.estimate.ci_low, r.estimate.fidelity);
        EXPECT_GE(r.estimate.ci_high, r.estimate.fidelity);
        for (Basis b : kAllBases) {
            EXPECT_EQ(r.counts[b].shots, 2000u);
        }
    }
}

TEST(tomography, experiment_is_reproducible) {
    IonChain chain = IonChain::linear(2, 7.4);
    AddressingBeam beam;
    beam.peak_pi_time_us = 13;
    TomographySettings settings{500, 100, SpamModel{}, DriftModel{}, 5};
    auto a = run_tomography_experiment({0, kPi / 2}, {kPi / 2, kPi / 2}, chain, beam, SwitchTiming{}, settings);
    auto b = run_tomography_experiment({0, kPi / 2}, {kPi / 2, kPi / 2}, chain, beam, SwitchTiming{}, settings);
    for (size_t i = 0; i < 2; i++) {
        for (Basis basis : kAllBases) {
            EXPECT_EQ(a[i].counts[basis].bright, b[i].counts[basis].bright);
        }
        EXPECT_EQ(a[i].estimate.ci_low, b[i].estimate.ci_low);
    }
}

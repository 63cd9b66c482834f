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

#include "ionsim/qmath.h"

#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "gtest/gtest.h"

using namespace ionsim;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix2cd to_eigen(const Matrix2 &m) {
    Eigen::Matrix2cd out;
    out << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
    return out;
}

PureState random_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Complex a{g(rng), g(rng)};
    Complex b{g(rng), g(rng)};
    double n = std::sqrt(std::norm(a) + std::norm(b));
    return PureState::from_amplitudes(a / n, b / n);
}

DensityMatrix random_mixed(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0, 1);
    BlochVector r = bloch_from_pure(random_state(rng)) * u(rng);
    return density_from_bloch(r);
}

}  // namespace

TEST(qmath, rotation_gate_zero_is_identity) {
    EXPECT_LT(rotation_gate(0, 0).matrix().max_abs_diff(Matrix2::identity()), 1e-15);
    EXPECT_LT(rotation_gate(1.234, 0).matrix().max_abs_diff(Matrix2::identity()), 1e-15);
}

TEST(qmath, pi_pulse_inverts_population) {
    PureState s = rotation_gate(0, kPi).apply(PureState::zero());
    EXPECT_NEAR(s.p1(), 1.0, 1e-15);
}

TEST(qmath, half_pi_x_points_along_minus_y) {
    PureState s = rotation_gate(0, kPi / 2).apply(PureState::zero());
    // (1, -i)/sqrt(2)
    EXPECT_NEAR(std::abs(s.amp0 - Complex(1 / std::sqrt(2.0), 0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(s.amp1 - Complex(0, -1 / std::sqrt(2.0))), 0, 1e-15);
    BlochVector r = bloch_from_pure(s);
    EXPECT_NEAR(r.x, 0, 1e-15);
    EXPECT_NEAR(r.y, -1, 1e-15);
    EXPECT_NEAR(r.z, 0, 1e-15);
}

TEST(qmath, half_pi_y_points_along_plus_x) {
    BlochVector r = bloch_from_pure(rotation_gate(kPi / 2, kPi / 2).apply(PureState::zero()));
    EXPECT_NEAR(r.x, 1, 1e-15);
    EXPECT_NEAR(r.y, 0, 1e-15);
    EXPECT_NEAR(r.z, 0, 1e-15);
}

TEST(qmath, rotation_gate_matches_matrix_exponential) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int k = 0; k < 200; k++) {
        double phi = u(rng);
        double theta = u(rng);
        Eigen::Matrix2cd h = std::cos(phi) * to_eigen(Matrix2::pauli_x()) + std::sin(phi) * to_eigen(Matrix2::pauli_y());
        Eigen::Matrix2cd expected = (Complex(0, -theta / 2) * h).exp();
        Eigen::Matrix2cd got = to_eigen(rotation_gate(phi, theta).matrix());
        EXPECT_LT((expected - got).cwiseAbs().maxCoeff(), 1e-12) << phi << " " << theta;
    }
}

TEST(qmath, apply_examples) {
    DensityMatrix zero = DensityMatrix::from_pure(PureState::zero());
    DensityMatrix one = DensityMatrix::from_pure(PureState::one());
    EXPECT_LT(apply(Unitary2::identity(), zero).matrix().max_abs_diff(zero.matrix()), 1e-15);
    EXPECT_LT(apply(rotation_gate(0, kPi), zero).matrix().max_abs_diff(one.matrix()), 1e-15);
    DensityMatrix mixed = DensityMatrix::maximally_mixed();
    EXPECT_LT(apply(rotation_gate(kPi / 2, kPi / 2), mixed).matrix().max_abs_diff(mixed.matrix()), 1e-15);
}

TEST(qmath, bloch_examples) {
    BlochVector r0 = bloch_from_density(DensityMatrix::from_pure(PureState::zero()));
    EXPECT_EQ(r0.x, 0);
    EXPECT_EQ(r0.y, 0);
    EXPECT_EQ(r0.z, 1);
    BlochVector rm = bloch_from_density(DensityMatrix::maximally_mixed());
    EXPECT_EQ(rm.norm(), 0);
    DensityMatrix plus = density_from_bloch({1, 0, 0});
    EXPECT_NEAR(std::abs(plus.matrix()(0, 1) - 0.5), 0, 1e-15);
    EXPECT_NEAR(std::abs(plus.matrix()(1, 0) - 0.5), 0, 1e-15);
    EXPECT_NEAR(plus.matrix()(0, 0).real(), 0.5, 1e-15);
}

TEST(qmath, bloch_round_trip) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; k++) {
        DensityMatrix rho = random_mixed(rng);
        DensityMatrix back = density_from_bloch(bloch_from_density(rho));
        EXPECT_LT(back.matrix().max_abs_diff(rho.matrix()), 1e-12);
    }
}

TEST(qmath, bloch_components_are_pauli_expectations) {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 50; k++) {
        DensityMatrix rho = random_mixed(rng);
        BlochVector r = bloch_from_density(rho);
        EXPECT_NEAR((rho.matrix() * Matrix2::pauli_x()).trace().real(), r.x, 1e-12);
        EXPECT_NEAR((rho.matrix() * Matrix2::pauli_y()).trace().real(), r.y, 1e-12);
        EXPECT_NEAR((rho.matrix() * Matrix2::pauli_z()).trace().real(), r.z, 1e-12);
    }
}

TEST(qmath, fidelity_examples) {
    std::mt19937_64 rng(3);
    PureState psi = random_state(rng);
    EXPECT_NEAR(fidelity_pure(DensityMatrix::from_pure(psi), psi), 1.0, 1e-12);
    EXPECT_NEAR(fidelity_pure(DensityMatrix::maximally_mixed(), psi), 0.5, 1e-12);
    EXPECT_NEAR(fidelity_pure(DensityMatrix::from_pure(PureState::zero()), PureState::one()), 0.0, 1e-15);
}

TEST(qmath, fidelity_matches_bloch_overlap) {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 100; k++) {
        DensityMatrix rho = random_mixed(rng);
        PureState psi = random_state(rng);
        double expected = (1 + bloch_from_density(rho).dot(bloch_from_pure(psi))) / 2;
        EXPECT_NEAR(fidelity_pure(rho, psi), expected, 1e-12);
    }
}

TEST(qmath, fidelity_rejects_nonphysical) {
    DensityMatrix raw = density_from_bloch({1.2, 0, 0});
    EXPECT_FALSE(raw.is_physical());
    EXPECT_THROW(fidelity_pure(raw, PureState::zero()), NonPhysicalStateError);
}

TEST(qmath, constructors_validate) {
    EXPECT_THROW(PureState::from_amplitudes(1, 1), std::invalid_argument);
    Matrix2 m = Matrix2::identity() * Complex(2, 0);
    EXPECT_THROW(Unitary2{m}, std::invalid_argument);
    Matrix2 h = Matrix2::identity() * Complex(0.5, 0);
    h(0, 1) = Complex(0.1, 0);
    EXPECT_THROW(DensityMatrix::from_matrix(h), std::invalid_argument);
    EXPECT_THROW(DensityMatrix::from_matrix(Matrix2::identity()), std::invalid_argument);
}

TEST(qmath, eigenvalues_match_eigen) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int k = 0; k < 200; k++) {
        DensityMatrix rho = density_from_bloch({g(rng), g(rng), g(rng)});
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(to_eigen(rho.matrix()));
        auto eig = rho.eigenvalues();
        EXPECT_NEAR(eig[0], solver.eigenvalues()(0), 1e-12);
        EXPECT_NEAR(eig[1], solver.eigenvalues()(1), 1e-12);
    }
}

TEST(qmath, property_inverse_rotation) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-20, 20);
    for (int k = 0; k < 500; k++) {
        double phi = u(rng);
        double theta = u(rng);
        Matrix2 prod = (rotation_gate(phi, theta) * rotation_gate(phi, -theta)).matrix();
        EXPECT_LT(prod.max_abs_diff(Matrix2::identity()), 1e-12);
    }
}

TEST(qmath, property_rotation_composition) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int k = 0; k < 500; k++) {
        double phi = u(rng);
        double a = u(rng);
        double b = u(rng);
        DensityMatrix rho = random_mixed(rng);
        DensityMatrix lhs = apply(rotation_gate(phi, a) * rotation_gate(phi, b), rho);
        DensityMatrix rhs = apply(rotation_gate(phi, a + b), rho);
        EXPECT_LT(lhs.matrix().max_abs_diff(rhs.matrix()), 1e-12);
    }
}

TEST(qmath, property_apply_preserves_spectrum) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int k = 0; k < 500; k++) {
        DensityMatrix rho = random_mixed(rng);
        DensityMatrix out = apply(rotation_gate(u(rng), u(rng)), rho);
        EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
        EXPECT_NEAR(out.matrix().trace().imag(), 0.0, 1e-12);
        EXPECT_TRUE(out.matrix().is_hermitian());
        auto e0 = rho.eigenvalues();
        auto e1 = out.eigenvalues();
        EXPECT_NEAR(e0[0], e1[0], 1e-12);
        EXPECT_NEAR(e0[1], e1[1], 1e-12);
    }
}

TEST(qmath, property_fidelity_rotation_invariant) {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int k = 0; k < 500; k++) {
        DensityMatrix rho = random_mixed(rng);
        PureState psi = random_state(rng);
        Unitary2 g = rotation_gate(u(rng), u(rng)) * rotation_gate(u(rng), u(rng));
        EXPECT_NEAR(fidelity_pure(rho, psi), fidelity_pure(apply(g, rho), g.apply(psi)), 1e-12);
    }
}

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

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ionsim {

Matrix2 Matrix2::identity() {
    return {{1.0, 0.0, 0.0, 1.0}};
}

Matrix2 Matrix2::pauli_x() {
    return {{0.0, 1.0, 1.0, 0.0}};
}

Matrix2 Matrix2::pauli_y() {
    return {{0.0, Complex{0, -1}, Complex{0, 1}, 0.0}};
}

Matrix2 Matrix2::pauli_z() {
    return {{1.0, 0.0, 0.0, -1.0}};
}

Matrix2 Matrix2::adjoint() const {
    return {{std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])}};
}

Complex Matrix2::trace() const {
    return e[0] + e[3];
}

double Matrix2::frobenius_norm() const {
    double total = 0;
    for (const auto &v : e) {
        total += std::norm(v);
    }
    return std::sqrt(total);
}

double Matrix2::max_abs_diff(const Matrix2 &other) const {
    double worst = 0;
    for (size_t k = 0; k < 4; k++) {
        worst = std::max(worst, std::abs(e[k] - other.e[k]));
    }
    return worst;
}

bool Matrix2::is_hermitian(double tol) const {
    return max_abs_diff(adjoint()) <= tol;
}

Matrix2 Matrix2::operator*(const Matrix2 &rhs) const {
    const Matrix2 &a = *this;
    Matrix2 out;
    for (size_t r = 0; r < 2; r++) {
        for (size_t c = 0; c < 2; c++) {
            out(r, c) = a(r, 0) * rhs(0, c) + a(r, 1) * rhs(1, c);
        }
    }
    return out;
}

Matrix2 Matrix2::operator+(const Matrix2 &rhs) const {
    Matrix2 out;
    for (size_t k = 0; k < 4; k++) {
        out.e[k] = e[k] + rhs.e[k];
    }
    return out;
}

Matrix2 Matrix2::operator-(const Matrix2 &rhs) const {
    Matrix2 out;
    for (size_t k = 0; k < 4; k++) {
        out.e[k] = e[k] - rhs.e[k];
    }
    return out;
}

Matrix2 Matrix2::operator*(Complex scale) const {
    Matrix2 out;
    for (size_t k = 0; k < 4; k++) {
        out.e[k] = e[k] * scale;
    }
    return out;
}

std::string Matrix2::str() const {
    std::stringstream ss;
    ss << "[[" << e[0] << ", " << e[1] << "], [" << e[2] << ", " << e[3] << "]]";
    return ss.str();
}

PureState PureState::zero() {
    return {1.0, 0.0};
}

PureState PureState::one() {
    return {0.0, 1.0};
}

PureState PureState::from_amplitudes(Complex amp0, Complex amp1) {
    PureState psi{amp0, amp1};
    if (std::abs(psi.norm_squared() - 1.0) > kAlgebraTolerance) {
        throw std::invalid_argument("PureState amplitudes are not normalized.");
    }
    return psi;
}

double PureState::norm_squared() const {
    return std::norm(amp0) + std::norm(amp1);
}

double BlochVector::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

double BlochVector::dot(const BlochVector &other) const {
    return x * other.x + y * other.y + z * other.z;
}

bool BlochVector::is_physical(double tol) const {
    return x * x + y * y + z * z <= 1.0 + tol;
}

Unitary2::Unitary2(const Matrix2 &m) : m_(m) {
    if ((m.adjoint() * m).max_abs_diff(Matrix2::identity()) > kAlgebraTolerance) {
        throw std::invalid_argument("Matrix is not unitary: " + m.str());
    }
}

Unitary2 Unitary2::identity() {
    return Unitary2(Matrix2::identity(), Unchecked{});
}

Unitary2 Unitary2::operator*(const Unitary2 &rhs) const {
    return Unitary2(m_ * rhs.m_, Unchecked{});
}

PureState Unitary2::apply(const PureState &psi) const {
    return {
        m_(0, 0) * psi.amp0 + m_(0, 1) * psi.amp1,
        m_(1, 0) * psi.amp0 + m_(1, 1) * psi.amp1,
    };
}

DensityMatrix DensityMatrix::from_matrix(const Matrix2 &m) {
    if (!m.is_hermitian()) {
        throw std::invalid_argument("Density matrix is not Hermitian: " + m.str());
    }
    if (std::abs(m.trace() - 1.0) > kAlgebraTolerance) {
        throw std::invalid_argument("Density matrix does not have unit trace: " + m.str());
    }
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    Matrix2 m;
    m(0, 0) = std::norm(psi.amp0);
    m(0, 1) = psi.amp0 * std::conj(psi.amp1);
    m(1, 0) = psi.amp1 * std::conj(psi.amp0);
    m(1, 1) = std::norm(psi.amp1);
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed() {
    return DensityMatrix(Matrix2::identity() * 0.5);
}

std::array<double, 2> DensityMatrix::eigenvalues() const {
    double a = m_(0, 0).real();
    double d = m_(1, 1).real();
    double mean = (a + d) / 2;
    double radius = std::hypot((a - d) / 2, std::abs(m_(0, 1)));
    return {mean - radius, mean + radius};
}

bool DensityMatrix::is_physical(double tol) const {
    return eigenvalues()[0] >= -tol;
}

Unitary2 rotation_gate(double phase, double angle) {
    double c = std::cos(angle / 2);
    double s = std::sin(angle / 2);
    // -i s (cos(phase) X + sin(phase) Y) off-diagonals.
    Complex minus_i_s{0, -s};
    Matrix2 m;
    m(0, 0) = c;
    m(0, 1) = minus_i_s * std::polar(1.0, -phase);
    m(1, 0) = minus_i_s * std::polar(1.0, phase);
    m(1, 1) = c;
    return Unitary2(m);
}

DensityMatrix apply(const Unitary2 &u, const DensityMatrix &rho) {
    Matrix2 out = u.matrix() * rho.matrix() * u.matrix().adjoint();
    // Re-symmetrize to keep rounding from accumulating in the Hermitian part.
    out = (out + out.adjoint()) * 0.5;
    return DensityMatrix::from_matrix(out);
}

BlochVector bloch_from_density(const DensityMatrix &rho) {
    const Matrix2 &m = rho.matrix();
    return {
        2 * m(0, 1).real(),
        -2 * m(0, 1).imag(),
        (m(0, 0) - m(1, 1)).real(),
    };
}

DensityMatrix density_from_bloch(const BlochVector &r) {
    Matrix2 m;
    m(0, 0) = (1 + r.z) / 2;
    m(0, 1) = Complex{r.x, -r.y} / 2.0;
    m(1, 0) = Complex{r.x, r.y} / 2.0;
    m(1, 1) = (1 - r.z) / 2;
    return DensityMatrix::from_matrix(m);
}

BlochVector bloch_from_pure(const PureState &psi) {
    return bloch_from_density(DensityMatrix::from_pure(psi));
}

double fidelity_pure(const DensityMatrix &rho, const PureState &psi) {
    if (!rho.is_physical()) {
        throw NonPhysicalStateError("fidelity_pure requires a physical density matrix: " + rho.matrix().str());
    }
    const Matrix2 &m = rho.matrix();
    Complex v0 = m(0, 0) * psi.amp0 + m(0, 1) * psi.amp1;
    Complex v1 = m(1, 0) * psi.amp0 + m(1, 1) * psi.amp1;
    double f = (std::conj(psi.amp0) * v0 + std::conj(psi.amp1) * v1).real();
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace ionsim

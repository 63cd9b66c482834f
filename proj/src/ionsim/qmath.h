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

#ifndef IONSIM_QMATH_H
#define IONSIM_QMATH_H

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace ionsim {

using Complex = std::complex<double>;

/// Tolerance for exact-algebra identities (unitarity, trace, normalization).
constexpr double kAlgebraTolerance = 1e-12;
/// Tolerance for eigenvalue positivity after floating point reconstruction.
constexpr double kPhysicalTolerance = 1e-9;

struct NonPhysicalStateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dense 2x2 complex matrix, row-major.
struct Matrix2 {
    std::array<Complex, 4> e{};

    static Matrix2 identity();
    static Matrix2 pauli_x();
    static Matrix2 pauli_y();
    static Matrix2 pauli_z();

    Complex operator()(size_t row, size_t col) const {
        return e[2 * row + col];
    }
    Complex &operator()(size_t row, size_t col) {
        return e[2 * row + col];
    }

    Matrix2 adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    double max_abs_diff(const Matrix2 &other) const;
    bool is_hermitian(double tol = kAlgebraTolerance) const;

    Matrix2 operator*(const Matrix2 &rhs) const;
    Matrix2 operator+(const Matrix2 &rhs) const;
    Matrix2 operator-(const Matrix2 &rhs) const;
    Matrix2 operator*(Complex scale) const;

    std::string str() const;
};

/// Single-qubit pure state. |0> is the dark state, |1> the bright one.
struct PureState {
    Complex amp0{1.0, 0.0};
    Complex amp1{0.0, 0.0};

    static PureState zero();
    static PureState one();
    /// Throws std::invalid_argument unless |amp0|^2 + |amp1|^2 = 1 within 1e-12.
    static PureState from_amplitudes(Complex amp0, Complex amp1);

    double norm_squared() const;
    /// Population of |1>.
    double p1() const {
        return std::norm(amp1);
    }
};

/// (<sigma_x>, <sigma_y>, <sigma_z>). |0> maps to +z. Raw vectors from linear
/// inversion may have norm above one; `is_physical` tells them apart.
struct BlochVector {
    double x = 0;
    double y = 0;
    double z = 0;

    double norm() const;
    double dot(const BlochVector &other) const;
    bool is_physical(double tol = kPhysicalTolerance) const;
    BlochVector operator*(double scale) const {
        return {x * scale, y * scale, z * scale};
    }
};

class Unitary2 {
   public:
    /// Throws std::invalid_argument unless U^dagger U = I within 1e-12.
    explicit Unitary2(const Matrix2 &m);
    static Unitary2 identity();

    const Matrix2 &matrix() const {
        return m_;
    }
    Unitary2 operator*(const Unitary2 &rhs) const;
    PureState apply(const PureState &psi) const;

   private:
    struct Unchecked {};
    Unitary2(const Matrix2 &m, Unchecked) : m_(m) {
    }
    Matrix2 m_;
};

/// Hermitian, unit-trace 2x2 matrix. Construction does not require positivity
/// so that raw reconstructions can be represented; use `is_physical`.
class DensityMatrix {
   public:
    /// Throws std::invalid_argument if not Hermitian or not unit trace (1e-12).
    static DensityMatrix from_matrix(const Matrix2 &m);
    static DensityMatrix from_pure(const PureState &psi);
    static DensityMatrix maximally_mixed();

    const Matrix2 &matrix() const {
        return m_;
    }
    /// Ascending.
    std::array<double, 2> eigenvalues() const;
    bool is_physical(double tol = kPhysicalTolerance) const;

   private:
    explicit DensityMatrix(const Matrix2 &m) : m_(m) {
    }
    Matrix2 m_;
};

/// exp(-i (angle/2) (cos(phase) X + sin(phase) Y)). phase 0 is R_x, pi/2 is R_y.
Unitary2 rotation_gate(double phase, double angle);

/// U rho U^dagger.
DensityMatrix apply(const Unitary2 &u, const DensityMatrix &rho);

BlochVector bloch_from_density(const DensityMatrix &rho);
/// (I + r.sigma)/2. Accepts raw vectors; the result may have a negative eigenvalue.
DensityMatrix density_from_bloch(const BlochVector &r);
BlochVector bloch_from_pure(const PureState &psi);

/// <psi|rho|psi>. Throws NonPhysicalStateError if rho has an eigenvalue below -1e-9.
double fidelity_pure(const DensityMatrix &rho, const PureState &psi);

}  // namespace ionsim

#endif

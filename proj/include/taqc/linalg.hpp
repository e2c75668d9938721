// Copyright 2026 The taqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Dense complex linear algebra for operators in the one-photon subspace.
 *
 * A bosonic bilinear Hamiltonian acting on N modes restricted to the
 * one-photon subspace is an arbitrary N x N Hermitian matrix. Everything in
 * the library is expressed in terms of the three value types below.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "taqc/tolerances.hpp"

namespace taqc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Thrown when an argument violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Dense complex Hermitian N x N matrix, N >= 1.
class HermitianMatrix {
  public:
    /// Validates Hermiticity within `tol`, then stores the exactly
    /// Hermitian part (M + M^dagger) / 2.
    static HermitianMatrix from_entries(const ComplexMatrix &entries,
                                        double tol = Tolerances::hermitian);
    static HermitianMatrix diagonal(std::span<const double> values);
    static HermitianMatrix zero(std::size_t dim);

    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    [[nodiscard]] const ComplexMatrix &matrix() const { return m_; }
    [[nodiscard]] Complex operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    /// Spectral norm bound: the Frobenius norm.
    [[nodiscard]] double norm() const { return m_.norm(); }

    friend HermitianMatrix operator+(const HermitianMatrix &a, const HermitianMatrix &b);
    friend HermitianMatrix operator-(const HermitianMatrix &a, const HermitianMatrix &b);
    friend HermitianMatrix operator*(double s, const HermitianMatrix &a);
    friend bool operator==(const HermitianMatrix &a, const HermitianMatrix &b) {
        return a.m_ == b.m_;
    }

  private:
    explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

/// Normalized amplitude vector of one photon over N spatial modes.
class StateVector {
  public:
    /// Rejects vectors whose squared norm differs from 1 by more than `tol`.
    static StateVector from_amplitudes(const ComplexVector &amps,
                                       double tol = Tolerances::normalization);
    /// Rescales a nonzero vector to unit norm.
    static StateVector normalized(const ComplexVector &amps);
    /// The photon in mode `mode`.
    static StateVector basis(std::size_t dim, std::size_t mode);

    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
    [[nodiscard]] const ComplexVector &amplitudes() const { return v_; }
    [[nodiscard]] Complex operator[](std::size_t i) const {
        return v_(static_cast<Eigen::Index>(i));
    }

  private:
    explicit StateVector(ComplexVector v) : v_(std::move(v)) {}
    ComplexVector v_;
};

struct Eigensystem;

/// Dense N x N unitary.
class UnitaryMatrix {
  public:
    static UnitaryMatrix from_entries(const ComplexMatrix &entries,
                                      double tol = Tolerances::unitarity);
    static UnitaryMatrix identity(std::size_t dim);

    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    [[nodiscard]] const ComplexMatrix &matrix() const { return m_; }
    [[nodiscard]] UnitaryMatrix adjoint() const { return UnitaryMatrix(m_.adjoint()); }
    [[nodiscard]] StateVector apply(const StateVector &psi) const;

    /// Operator product; `b` acts first.
    friend UnitaryMatrix operator*(const UnitaryMatrix &a, const UnitaryMatrix &b);

  private:
    explicit UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;

    friend UnitaryMatrix unitary_of(const Eigensystem &eig, double s);
    friend Eigensystem eig_hermitian(const HermitianMatrix &h);
};

/// Eigenvalues in ascending order, eigenvectors as the columns of `vectors`.
struct Eigensystem {
    RealVector values;
    UnitaryMatrix vectors;
};

Eigensystem eig_hermitian(const HermitianMatrix &h);

/// exp(-i s H) through the eigendecomposition V exp(-i s Lambda) V^dagger.
UnitaryMatrix unitary_of(const HermitianMatrix &h, double s);
UnitaryMatrix unitary_of(const Eigensystem &eig, double s);

/// exp(-i s H) psi without forming the N x N exponential.
ComplexVector apply_exponential(const Eigensystem &eig, double s, const ComplexVector &psi);

Complex inner(const StateVector &a, const StateVector &b);

/// |<a|b>|^2, in [0, 1].
double fidelity(const StateVector &a, const StateVector &b);

/// Max-abs entry of a - b.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Largest singular value of `m`.
double operator_norm(const ComplexMatrix &m);

} // namespace taqc

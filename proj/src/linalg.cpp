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

#include "taqc/linalg.hpp"

#include <cmath>
#include <sstream>

namespace taqc {

namespace {

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

} // namespace

HermitianMatrix HermitianMatrix::from_entries(const ComplexMatrix &entries, double tol) {
    if (entries.rows() == 0 || entries.rows() != entries.cols()) {
        throw InvalidArgument("HermitianMatrix: expected a non-empty square matrix");
    }
    if (!entries.allFinite()) {
        throw InvalidArgument("HermitianMatrix: non-finite entry");
    }
    const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol) {
        std::ostringstream msg;
        msg << "HermitianMatrix: symmetry violation " << asym << " exceeds " << tol;
        throw InvalidArgument(msg.str());
    }
    ComplexMatrix sym = 0.5 * (entries + entries.adjoint());
    return HermitianMatrix(std::move(sym));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
    if (values.empty()) {
        throw InvalidArgument("HermitianMatrix: dimension must be at least 1");
    }
    ComplexMatrix m = ComplexMatrix::Zero(as_index(values.size()), as_index(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(as_index(i), as_index(i)) = values[i];
    }
    return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
    if (dim == 0) {
        throw InvalidArgument("HermitianMatrix: dimension must be at least 1");
    }
    return HermitianMatrix(ComplexMatrix::Zero(as_index(dim), as_index(dim)));
}

HermitianMatrix operator+(const HermitianMatrix &a, const HermitianMatrix &b) {
    if (a.dim() != b.dim()) {
        throw InvalidArgument("HermitianMatrix: dimension mismatch in sum");
    }
    return HermitianMatrix(a.m_ + b.m_);
}

HermitianMatrix operator-(const HermitianMatrix &a, const HermitianMatrix &b) {
    if (a.dim() != b.dim()) {
        throw InvalidArgument("HermitianMatrix: dimension mismatch in difference");
    }
    return HermitianMatrix(a.m_ - b.m_);
}

HermitianMatrix operator*(double s, const HermitianMatrix &a) { return HermitianMatrix(s * a.m_); }

StateVector StateVector::from_amplitudes(const ComplexVector &amps, double tol) {
    if (amps.size() == 0) {
        throw InvalidArgument("StateVector: dimension must be at least 1");
    }
    const double norm2 = amps.squaredNorm();
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > tol) {
        std::ostringstream msg;
        msg << "StateVector: squared norm " << norm2 << " is not 1";
        throw InvalidArgument(msg.str());
    }
    return StateVector(amps);
}

StateVector StateVector::normalized(const ComplexVector &amps) {
    const double n = amps.norm();
    if (amps.size() == 0 || !(n > 0.0) || !std::isfinite(n)) {
        throw InvalidArgument("StateVector: cannot normalize a zero or non-finite vector");
    }
    return StateVector(amps / n);
}

StateVector StateVector::basis(std::size_t dim, std::size_t mode) {
    if (mode >= dim) {
        throw InvalidArgument("StateVector: basis mode out of range");
    }
    ComplexVector v = ComplexVector::Zero(as_index(dim));
    v(as_index(mode)) = 1.0;
    return StateVector(std::move(v));
}

UnitaryMatrix UnitaryMatrix::from_entries(const ComplexMatrix &entries, double tol) {
    if (entries.rows() == 0 || entries.rows() != entries.cols()) {
        throw InvalidArgument("UnitaryMatrix: expected a non-empty square matrix");
    }
    const auto n = entries.rows();
    const double err = (entries.adjoint() * entries - ComplexMatrix::Identity(n, n)).norm();
    if (!(err <= tol)) {
        std::ostringstream msg;
        msg << "UnitaryMatrix: |U^dagger U - I| = " << err << " exceeds " << tol;
        throw InvalidArgument(msg.str());
    }
    return UnitaryMatrix(entries);
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
    if (dim == 0) {
        throw InvalidArgument("UnitaryMatrix: dimension must be at least 1");
    }
    return UnitaryMatrix(ComplexMatrix::Identity(as_index(dim), as_index(dim)));
}

StateVector UnitaryMatrix::apply(const StateVector &psi) const {
    if (psi.dim() != dim()) {
        throw InvalidArgument("UnitaryMatrix: state dimension mismatch");
    }
    return StateVector::from_amplitudes(m_ * psi.amplitudes());
}

UnitaryMatrix operator*(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    if (a.dim() != b.dim()) {
        throw InvalidArgument("UnitaryMatrix: dimension mismatch in product");
    }
    return UnitaryMatrix(a.m_ * b.m_);
}

Eigensystem eig_hermitian(const HermitianMatrix &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigensolver did not converge");
    }
    // SelfAdjointEigenSolver already returns ascending eigenvalues.
    return Eigensystem{solver.eigenvalues(), UnitaryMatrix(solver.eigenvectors())};
}

UnitaryMatrix unitary_of(const Eigensystem &eig, double s) {
    if (!std::isfinite(s)) {
        throw InvalidArgument("unitary_of: non-finite time");
    }
    const ComplexMatrix &v = eig.vectors.matrix();
    ComplexVector phases(eig.values.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases(i) = std::polar(1.0, -s * eig.values(i));
    }
    return UnitaryMatrix(v * phases.asDiagonal() * v.adjoint());
}

UnitaryMatrix unitary_of(const HermitianMatrix &h, double s) {
    if (s == 0.0) {
        return UnitaryMatrix::identity(h.dim());
    }
    return unitary_of(eig_hermitian(h), s);
}

ComplexVector apply_exponential(const Eigensystem &eig, double s, const ComplexVector &psi) {
    const ComplexMatrix &v = eig.vectors.matrix();
    ComplexVector c = v.adjoint() * psi;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        c(i) *= std::polar(1.0, -s * eig.values(i));
    }
    return v * c;
}

Complex inner(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw InvalidArgument("inner: dimension mismatch");
    }
    return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const StateVector &a, const StateVector &b) {
    const double f = std::norm(inner(a, b));
    return std::min(1.0, f);
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

double operator_norm(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

} // namespace taqc

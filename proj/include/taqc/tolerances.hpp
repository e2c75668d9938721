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

#pragma once

namespace taqc {

/// Numerical tolerances shared by the library, the tests and the CLI.
struct Tolerances {
    /// Max |H(i,j) - conj(H(j,i))| accepted when building a HermitianMatrix from raw data.
    static constexpr double hermitian = 1e-12;
    /// Max |<psi|psi> - 1| accepted for a StateVector.
    static constexpr double normalization = 1e-10;
    /// Max Frobenius norm of U^dagger U - I accepted for a UnitaryMatrix.
    static constexpr double unitarity = 1e-10;
    /// Max roundoff drift of |psi|^2 per propagation step before renormalizing.
    static constexpr double drift_per_step = 1e-13;
    /// Eigenvalue gaps below this mark a ground level as degenerate.
    static constexpr double degenerate_gap = 1e-9;
};

} // namespace taqc

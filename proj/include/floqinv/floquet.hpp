// Copyright 2026 The floqinv Authors
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

#pragma once

#include <optional>
#include <vector>

#include "floqinv/linalg.hpp"
#include "floqinv/model.hpp"

namespace floqinv {

/// Floquet decomposition V = theta diag(e^{-i omega_j T}) theta^dagger of a
/// monodromy matrix. Quasienergies live in the first zone [0, 2 pi / T);
/// column j of theta is the eigenvector assigned to bare level j.
///
/// Sign convention: forward evolution carries e^{-i omega T}, so a field-free
/// system has omega_j = eps_j mod omega_0. The exponential in the usual
/// "U(nT) = exp(i n Omega T)" form corresponds to Omega -> -Omega.
struct FloquetSpectrum {
  RVector quasienergies;
  CMatrix theta;
  double period = 0.0;

  double zone_width() const { return kTwoPi / period; }
  /// q_j = omega_j / omega_0 in [0, 1).
  RVector reduced() const { return quasienergies / zone_width(); }
};

/// Diagonalizes a unitary by complex Schur triangularization (the Schur
/// factor of a normal matrix is diagonal) and assigns eigenvectors to bare
/// levels greedily by largest |overlap|, lowest index on ties.
FloquetSpectrum floquet_spectrum(const CMatrix& v, double period);

struct InversionCriterion {
  bool satisfied = false;
  /// Nearest n in (omega_f - omega_i) T = (2n + 1) pi.
  long n = 0;
  /// Circle distance of the phase spacing to the nearest odd multiple of pi.
  double residual = 0.0;
  double phase_spacing = 0.0;
};

/// Necessary condition for inversion between levels i and f.
InversionCriterion inversion_criterion(const FloquetSpectrum& spec, int i,
                                       int f, double tol);

/// [psi, V psi, ..., V^{m-1} psi].
std::vector<StateVector> orbit(const CMatrix& v, const StateVector& psi0, int m);

struct RationalApprox {
  bool rational = false;
  int m = 0;
  std::vector<long> numerators;
};

/// Smallest common denominator m <= m_max with |q_j - n_j/m| < tol on the
/// circle for all j; rational = false when none exists.
RationalApprox rational_approx(const FloquetSpectrum& spec, int m_max,
                               double tol);

}  // namespace floqinv

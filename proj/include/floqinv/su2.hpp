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

#include "floqinv/linalg.hpp"
#include "floqinv/propagation.hpp"

namespace floqinv {

/// V = e^{i chi} [[ e^{i d1} cos(delta),  e^{i d2} sin(delta)],
///                [-e^{-i d2} sin(delta), e^{-i d1} cos(delta)]]
///
/// decompose_su2 returns chi in (-pi/2, pi/2], delta in [0, pi/2] and
/// delta1, delta2 in (-pi, pi]; delta1 (delta2) is set to 0 when cos(delta)
/// (sin(delta)) vanishes.
struct Su2Params {
  double chi = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double delta = 0.0;
};

/// Eigenvalues and normalized eigenvectors (columns) of a unitary 2x2.
/// zeta1 is the "+" root e^{i chi}(c + i sqrt(1 - c^2)), c = cos(delta)cos(delta1).
struct Eigensystem2 {
  Complex zeta1;
  Complex zeta2;
  CMatrix vectors;
};

struct PiAngleCheck {
  bool is_pi = false;
  /// Nearest (2k+1) pi/2; meaningful when is_pi.
  long k = 0;
  double residual = 0.0;
};

struct SufficientPiCheck {
  bool is_pi_rotation = false;
  std::optional<double> alpha;
  /// max | |e_jk| - 1/sqrt(2) | over the gauge-fixed eigenvector matrix.
  double residual = 0.0;
  CMatrix gauged_vectors;
};

struct PspcTargets {
  double delta = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
};

/// Throws kNotUnitary (tolerance 1e-9) or kDimensionMismatch.
Su2Params decompose_su2(const CMatrix& v);
CMatrix compose_su2(const Su2Params& p);

PiAngleCheck pi_angle_check(double delta, double tol);

Eigensystem2 eigensystem_2ls(const CMatrix& v);

/// Sufficient inversion test on the eigenvector matrix: after making the
/// first nonzero component of each eigenvector real positive, all entries
/// must have modulus 1/sqrt(2) within tol. alpha = -arg(e^1_2).
/// Throws kDegenerateEigenvectors when |zeta1 - zeta2| < 1e-9.
SufficientPiCheck sufficient_pi_check(const Eigensystem2& eig, double tol);

/// Delta2 for phase-selective inversion e1 -> e^{i beta} e2 (k = 0),
/// reduced to (-pi, pi].
double pspi_delta2(double chi, double beta);

/// Solves a = e^{i(chi+d1)} cos(delta), b = -e^{i(chi-d2)} sin(delta).
/// Throws kNormViolation when |a|^2 + |b|^2 != 1 within 1e-10.
PspcTargets pspc_targets(Complex a, Complex b, double chi);

}  // namespace floqinv

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

#include <complex>

#include <Eigen/Dense>

namespace floqinv {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Largest entry modulus.
double max_abs(const CMatrix& m);

/// max |U^dagger U - I|.
double unitarity_error(const CMatrix& u);

/// Hermiticity defect max |A_jk - conj(A_kj)|.
double hermiticity_error(const CMatrix& a);

/// exp(-i * h * H) for Hermitian H. Closed Pauli form at N = 2,
/// eigendecomposition otherwise; the result is unitary to rounding.
CMatrix expm_hermitian(const CMatrix& hamiltonian, double h);

/// Reduce an angle to (-pi, pi].
double wrap_pi(double angle);

/// Reduce x to [0, period).
double wrap_positive(double x, double period);

/// Distance from `phase` to the nearest odd multiple of pi, measured on the
/// circle; `nearest` receives n of the nearest (2n+1)pi.
double odd_pi_distance(double phase, long* nearest = nullptr);

}  // namespace floqinv

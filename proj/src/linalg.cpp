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

#include "floqinv/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace floqinv {

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double unitarity_error(const CMatrix& u) {
  const auto n = u.cols();
  return max_abs(u.adjoint() * u - CMatrix::Identity(n, n));
}

double hermiticity_error(const CMatrix& a) {
  return max_abs(a - a.adjoint());
}

CMatrix expm_hermitian(const CMatrix& hamiltonian, double h) {
  const auto n = hamiltonian.rows();
  const Complex minus_i(0.0, -1.0);
  if (n == 1) {
    CMatrix out(1, 1);
    out(0, 0) = std::exp(minus_i * hamiltonian(0, 0).real() * h);
    return out;
  }
  if (n == 2) {
    // H = a I + r (n . sigma):  exp(-i h H) = e^{-i a h} [cos(rh) I - i sin(rh) (H - a I)/r]
    const double a = 0.5 * (hamiltonian(0, 0).real() + hamiltonian(1, 1).real());
    const double dz = 0.5 * (hamiltonian(0, 0).real() - hamiltonian(1, 1).real());
    const Complex off = hamiltonian(0, 1);
    const double r = std::sqrt(dz * dz + std::norm(off));
    const double rh = r * h;
    const double c = std::cos(rh);
    // sin(rh)/r, finite as r -> 0
    const double s_over_r = r * std::abs(h) > 1e-8 ? std::sin(rh) / r
                                                    : h * (1.0 - rh * rh / 6.0);
    const Complex phase = std::exp(minus_i * a * h);
    CMatrix out(2, 2);
    out(0, 0) = phase * Complex(c, -s_over_r * dz);
    out(1, 1) = phase * Complex(c, s_over_r * dz);
    out(0, 1) = phase * minus_i * s_over_r * off;
    out(1, 0) = phase * minus_i * s_over_r * std::conj(off);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hamiltonian);
  const auto& w = solver.eigenvalues();
  const auto& v = solver.eigenvectors();
  CVector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::exp(minus_i * w(k) * h);
  return v * phases.asDiagonal() * v.adjoint();
}

double wrap_pi(double angle) {
  double r = std::remainder(angle, kTwoPi);  // [-pi, pi]
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double wrap_positive(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r -= period;
  return r;
}

double odd_pi_distance(double phase, long* nearest) {
  const double shifted = phase - kPi;
  const double n = std::round(shifted / kTwoPi);
  if (nearest != nullptr) *nearest = static_cast<long>(n);
  return std::abs(std::remainder(shifted, kTwoPi));
}

}  // namespace floqinv

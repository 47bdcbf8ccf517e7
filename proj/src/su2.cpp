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

#include "floqinv/su2.hpp"

#include <cmath>
#include <string>

#include "floqinv/error.hpp"

namespace floqinv {

namespace {

constexpr double kUnitarityTol = 1e-9;
constexpr double kPhaseCutoff = 1e-12;
constexpr double kDegeneracyTol = 1e-9;

void require_unitary_2x2(const CMatrix& v) {
  if (v.rows() != 2 || v.cols() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "expected a 2x2 matrix");
  }
  const double err = unitarity_error(v);
  if (!(err <= kUnitarityTol)) {
    throw Error(ErrorCode::kNotUnitary,
                "matrix is not unitary (defect " + std::to_string(err) + ")");
  }
}

}  // namespace

Su2Params decompose_su2(const CMatrix& v) {
  require_unitary_2x2(v);
  const Complex det = v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0);
  Su2Params p;
  p.chi = 0.5 * std::arg(det);
  const Complex unphase = std::exp(Complex(0.0, -p.chi));
  const Complex a = unphase * v(0, 0);
  const Complex b = unphase * v(0, 1);
  p.delta = std::atan2(std::abs(b), std::abs(a));
  p.delta1 = std::abs(a) > kPhaseCutoff ? wrap_pi(std::arg(a)) : 0.0;
  p.delta2 = std::abs(b) > kPhaseCutoff ? wrap_pi(std::arg(b)) : 0.0;
  return p;
}

CMatrix compose_su2(const Su2Params& p) {
  const double c = std::cos(p.delta);
  const double s = std::sin(p.delta);
  const Complex g = std::exp(Complex(0.0, p.chi));
  const Complex e1 = std::exp(Complex(0.0, p.delta1));
  const Complex e2 = std::exp(Complex(0.0, p.delta2));
  CMatrix v(2, 2);
  v(0, 0) = g * e1 * c;
  v(0, 1) = g * e2 * s;
  v(1, 0) = -g * std::conj(e2) * s;
  v(1, 1) = g * std::conj(e1) * c;
  return v;
}

PiAngleCheck pi_angle_check(double delta, double tol) {
  const double quarter_turns = delta / (0.5 * kPi);
  PiAngleCheck out;
  out.k = static_cast<long>(std::round((quarter_turns - 1.0) / 2.0));
  out.residual =
      std::abs(delta - (2.0 * static_cast<double>(out.k) + 1.0) * 0.5 * kPi);
  out.is_pi = out.residual < tol;
  return out;
}

Eigensystem2 eigensystem_2ls(const CMatrix& v) {
  const Su2Params p = decompose_su2(v);
  const double c = std::cos(p.delta) * std::cos(p.delta1);
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  const Complex g = std::exp(Complex(0.0, p.chi));
  Eigensystem2 out;
  out.zeta1 = g * Complex(c, s);
  out.zeta2 = g * Complex(c, -s);

  // Null vector of V - zeta1 from whichever row is better conditioned; the
  // second eigenvector of a normal 2x2 is the orthogonal complement.
  CVector from_row0(2);
  from_row0 << v(0, 1), out.zeta1 - v(0, 0);
  CVector from_row1(2);
  from_row1 << out.zeta1 - v(1, 1), v(1, 0);
  CVector e1 = from_row0.norm() >= from_row1.norm() ? from_row0 : from_row1;
  if (e1.norm() < 1e-14) {
    e1 = CVector::Zero(2);
    e1(0) = 1.0;
  }
  e1.normalize();
  out.vectors.resize(2, 2);
  out.vectors.col(0) = e1;
  out.vectors(0, 1) = -std::conj(e1(1));
  out.vectors(1, 1) = std::conj(e1(0));
  return out;
}

SufficientPiCheck sufficient_pi_check(const Eigensystem2& eig, double tol) {
  if (std::abs(eig.zeta1 - eig.zeta2) < kDegeneracyTol) {
    throw Error(ErrorCode::kDegenerateEigenvectors,
                "eigenvalues coincide; eigenvectors are not determined");
  }
  SufficientPiCheck out;
  out.gauged_vectors = eig.vectors;
  for (int col = 0; col < 2; ++col) {
    for (int row = 0; row < 2; ++row) {
      const Complex z = out.gauged_vectors(row, col);
      if (std::abs(z) > kPhaseCutoff) {
        out.gauged_vectors.col(col) *= std::conj(z) / std::abs(z);
        break;
      }
    }
  }
  const double target = 1.0 / std::sqrt(2.0);
  for (int col = 0; col < 2; ++col) {
    for (int row = 0; row < 2; ++row) {
      out.residual = std::max(
          out.residual, std::abs(std::abs(out.gauged_vectors(row, col)) - target));
    }
  }
  out.is_pi_rotation = out.residual < tol;
  if (out.is_pi_rotation) {
    out.alpha = wrap_pi(-std::arg(out.gauged_vectors(1, 0)));
  }
  return out;
}

double pspi_delta2(double chi, double beta) {
  return wrap_pi(chi - beta + kPi);
}

PspcTargets pspc_targets(Complex a, Complex b, double chi) {
  const double norm2 = std::norm(a) + std::norm(b);
  if (!(std::abs(norm2 - 1.0) <= 1e-10)) {
    throw Error(ErrorCode::kNormViolation,
                "|a|^2 + |b|^2 = " + std::to_string(norm2) + ", expected 1");
  }
  PspcTargets out;
  out.delta = std::atan2(std::abs(b), std::abs(a));
  out.delta1 = std::abs(a) > kPhaseCutoff ? wrap_pi(std::arg(a) - chi) : 0.0;
  out.delta2 = std::abs(b) > kPhaseCutoff ? wrap_pi(chi - std::arg(-b)) : 0.0;
  return out;
}

}  // namespace floqinv

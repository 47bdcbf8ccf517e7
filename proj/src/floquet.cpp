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

#include "floqinv/floquet.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "floqinv/error.hpp"

namespace floqinv {

FloquetSpectrum floquet_spectrum(const CMatrix& v, double period) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw Error(ErrorCode::kDomainError, "Floquet period must be > 0");
  }
  if (v.rows() != v.cols() || v.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "expected a square matrix");
  }
  const auto n = static_cast<int>(v.rows());
  Eigen::ComplexSchur<CMatrix> schur(v);
  const CMatrix& q = schur.matrixU();
  const CMatrix& tri = schur.matrixT();

  // Greedy level assignment on |Q|.
  std::vector<int> column_of_level(n, -1);
  std::vector<bool> level_used(n, false);
  std::vector<bool> column_used(n, false);
  for (int round = 0; round < n; ++round) {
    double best = -1.0;
    int best_level = -1;
    int best_col = -1;
    for (int level = 0; level < n; ++level) {
      if (level_used[level]) continue;
      for (int col = 0; col < n; ++col) {
        if (column_used[col]) continue;
        const double overlap = std::abs(q(level, col));
        if (overlap > best) {
          best = overlap;
          best_level = level;
          best_col = col;
        }
      }
    }
    level_used[best_level] = true;
    column_used[best_col] = true;
    column_of_level[best_level] = best_col;
  }

  FloquetSpectrum out;
  out.period = period;
  out.quasienergies.resize(n);
  out.theta.resize(n, n);
  const double zone = kTwoPi / period;
  for (int level = 0; level < n; ++level) {
    const int col = column_of_level[level];
    CVector vec = q.col(col);
    const Complex anchor = vec(level);
    if (std::abs(anchor) > 0.0) vec *= std::conj(anchor) / std::abs(anchor);
    out.theta.col(level) = vec;
    out.quasienergies(level) =
        wrap_positive(-std::arg(tri(col, col)) / period, zone);
  }
  return out;
}

InversionCriterion inversion_criterion(const FloquetSpectrum& spec, int i,
                                       int f, double tol) {
  const int n = static_cast<int>(spec.quasienergies.size());
  if (i < 0 || f < 0 || i >= n || f >= n || i == f) {
    throw Error(ErrorCode::kInvalidArgument,
                "inversion criterion needs two distinct level indices");
  }
  InversionCriterion out;
  out.phase_spacing =
      (spec.quasienergies(f) - spec.quasienergies(i)) * spec.period;
  out.residual = odd_pi_distance(out.phase_spacing, &out.n);
  out.satisfied = out.residual < tol;
  return out;
}

std::vector<StateVector> orbit(const CMatrix& v, const StateVector& psi0,
                               int m) {
  if (m < 1) {
    throw Error(ErrorCode::kInvalidArgument, "orbit length must be >= 1");
  }
  if (v.cols() != psi0.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "state dimension does not match the propagator");
  }
  std::vector<StateVector> out;
  out.reserve(static_cast<std::size_t>(m));
  out.push_back(psi0);
  CVector psi = psi0.amplitudes();
  for (int k = 1; k < m; ++k) {
    psi = v * psi;
    out.emplace_back(psi, 1e-9);
  }
  return out;
}

RationalApprox rational_approx(const FloquetSpectrum& spec, int m_max,
                               double tol) {
  if (m_max < 1) {
    throw Error(ErrorCode::kInvalidArgument, "m_max must be >= 1");
  }
  const RVector q = spec.reduced();
  for (int m = 1; m <= m_max; ++m) {
    RationalApprox out;
    out.rational = true;
    out.m = m;
    for (Eigen::Index j = 0; j < q.size(); ++j) {
      const double scaled = q(j) * m;
      const double nearest = std::round(scaled);
      if (std::abs(scaled - nearest) / m >= tol) {
        out.rational = false;
        break;
      }
      out.numerators.push_back(static_cast<long>(nearest) % m);
    }
    if (out.rational) return out;
  }
  return RationalApprox{};
}

}  // namespace floqinv

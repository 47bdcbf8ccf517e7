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

#include "floqinv/nlevel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "floqinv/error.hpp"

namespace floqinv {

namespace {

constexpr double kParallelTol = 1e-12;
constexpr double kPhaseCutoff = 1e-12;

}  // namespace

TransferReport classify_transfer(const PropagatorMatrix& v,
                                 const StateVector& psi_i,
                                 const StateVector& psi_f,
                                 const ClassifyOptions& opts) {
  const int n = v.dim();
  if (psi_i.size() != n || psi_f.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "state vectors do not match the propagator dimension");
  }
  const CVector out = v.matrix() * psi_i.amplitudes();
  const CVector& target = psi_f.amplitudes();

  TransferReport rep;
  rep.populations_final = out.cwiseAbs2();
  rep.orthogonal = std::abs(psi_i.amplitudes().dot(target)) < opts.tol;
  rep.population_residual =
      (rep.populations_final - target.cwiseAbs2()).cwiseAbs().maxCoeff();
  rep.population_ok = rep.population_residual < opts.tol;

  const Complex amp = target.dot(out);  // <psi_f, V psi_i>
  rep.fidelity = std::abs(amp);
  rep.phase = opts.locked_phase ? *opts.locked_phase : std::arg(amp);
  rep.phase_residual =
      (out - std::exp(Complex(0.0, rep.phase)) * target).norm();
  rep.phase_ok = rep.phase_residual < opts.tol;

  try {
    const CMatrix r = build_rotation(psi_i, psi_f);
    rep.block_residual = block_residual(v.matrix(), r);
    const double period = v.duration() > 0.0 ? v.duration() : 1.0;
    const FloquetSpectrum spec =
        floquet_spectrum(r * v.matrix() * r.adjoint(), period);
    rep.criterion = inversion_criterion(spec, 0, 1, opts.tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParallelVectors) throw;
  }
  return rep;
}

CMatrix build_rotation(const StateVector& psi_i, const StateVector& psi_f) {
  const int n = psi_i.size();
  if (psi_f.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "initial and final vectors differ in dimension");
  }
  const CVector& a = psi_i.amplitudes();
  const Complex overlap = a.dot(psi_f.amplitudes());
  if (1.0 - std::abs(overlap) < kParallelTol) {
    throw Error(ErrorCode::kParallelVectors,
                "initial and final vectors are linearly dependent");
  }
  CMatrix basis(n, n);
  basis.col(0) = a;
  const CVector w = psi_f.amplitudes() - overlap * a;
  basis.col(1) = w / w.norm();

  auto residual_of = [&](const CVector& seed, int filled) {
    CVector r = seed;
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < filled; ++k) {
        r -= basis.col(k).dot(r) * basis.col(k);
      }
    }
    return r;
  };

  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int slot = 2; slot < n; ++slot) {
    int best = -1;
    double best_norm = -1.0;
    CVector best_vec;
    for (int k = 0; k < n; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      const CVector r = residual_of(CVector::Unit(n, k), slot);
      const double norm = r.norm();
      if (norm > best_norm + 1e-12) {
        best = k;
        best_norm = norm;
        best_vec = r;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    CVector b = best_vec / best_norm;
    for (int j = 0; j < n; ++j) {
      if (std::abs(b(j)) > kPhaseCutoff) {
        b *= std::conj(b(j)) / std::abs(b(j));
        break;
      }
    }
    basis.col(slot) = b;
  }
  return basis.adjoint();
}

double block_residual(const CMatrix& v, const CMatrix& r) {
  if (v.rows() != r.rows() || v.cols() != r.cols() || v.rows() != v.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "rotation and propagator dimensions differ");
  }
  const auto n = v.rows();
  if (n <= 2) return 0.0;
  const CMatrix rotated = r * v * r.adjoint();
  return std::max(max_abs(rotated.topRightCorner(2, n - 2)),
                  max_abs(rotated.bottomLeftCorner(n - 2, 2)));
}

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kPspcControl: return "pspc_control";
    case Scenario::kPcControl: return "pc_control";
    case Scenario::kPspiEff2lsOrtho: return "pspi_eff2ls_ortho";
    case Scenario::kPiEff2lsOrtho: return "pi_eff2ls_ortho";
    case Scenario::kPspcEff2lsNonortho: return "pspc_eff2ls_nonortho";
    case Scenario::kPcEff2lsNonortho: return "pc_eff2ls_nonortho";
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view name) {
  for (Scenario s : kAllScenarios) {
    if (scenario_name(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown scenario '" + std::string(name) + "'");
}

// Rows N = 2..10; columns PSPC, PC (control), PSPI, PI (effective 2LS,
// orthogonal), PSPC, PC (effective 2LS, non-orthogonal).
const std::array<std::array<int, 6>, 9> kConditionTable = {{
    {4, 2, 3, 2, 4, 2},
    {6, 3, 9, 4, 9, 9},
    {8, 4, 13, 6, 16, 16},
    {10, 5, 17, 8, 25, 25},
    {12, 6, 21, 10, 36, 34},
    {14, 7, 25, 12, 44, 42},
    {16, 8, 29, 14, 52, 50},
    {18, 9, 33, 16, 60, 58},
    {20, 10, 37, 18, 68, 66},
}};

int condition_count_formula(int n, Scenario s) {
  if (n < 2) {
    throw Error(ErrorCode::kDomainError,
                "condition counts need N >= 2, got " + std::to_string(n));
  }
  const int square = n * n;
  switch (s) {
    case Scenario::kPspcControl: return 2 * n;
    case Scenario::kPcControl: return n;
    case Scenario::kPspiEff2lsOrtho: return std::min(4 * n - 3, square);
    case Scenario::kPiEff2lsOrtho: return 2 * n - 2;
    case Scenario::kPspcEff2lsNonortho: return std::min(8 * n - 12, square);
    case Scenario::kPcEff2lsNonortho: return std::min(8 * n - 14, square);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown scenario");
}

int condition_count(int n, Scenario s) {
  const int formula = condition_count_formula(n, s);
  if (n > 10) return formula;
  const auto column = static_cast<std::size_t>(
      std::find(kAllScenarios.begin(), kAllScenarios.end(), s) -
      kAllScenarios.begin());
  return kConditionTable[static_cast<std::size_t>(n - 2)][column];
}

bool condition_count_flagged(int n, Scenario s) {
  return condition_count(n, s) != condition_count_formula(n, s);
}

}  // namespace floqinv

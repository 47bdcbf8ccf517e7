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

#include <array>
#include <optional>
#include <string_view>

#include "floqinv/floquet.hpp"
#include "floqinv/linalg.hpp"
#include "floqinv/model.hpp"
#include "floqinv/propagation.hpp"

namespace floqinv {

struct ClassifyOptions {
  double tol = 1e-6;
  /// When set, the phase-selective test uses this phase instead of the
  /// best-fit global phase.
  std::optional<double> locked_phase;
};

/// Outcome of comparing V psi_i against psi_f.
///
/// The population test (PI when psi_i and psi_f are orthogonal, PC
/// otherwise) compares |(V psi_i)_j|^2 with |psi_f_j|^2; the phase-selective
/// test (PSPI / PSPC) compares V psi_i with e^{i phi} psi_f.
struct TransferReport {
  RVector populations_final;
  double fidelity = 0.0;  // |<psi_f, V psi_i>|
  bool orthogonal = false;
  bool population_ok = false;
  double population_residual = 0.0;
  bool phase_ok = false;
  double phase_residual = 0.0;
  double phase = 0.0;
  /// Necessary Floquet criterion for the effective (psi_i, psi_f) pair in the
  /// rotated frame; absent when psi_i and psi_f are parallel.
  std::optional<InversionCriterion> criterion;
  std::optional<double> block_residual;

  bool pi() const { return orthogonal && population_ok; }
  bool pspi() const { return orthogonal && phase_ok; }
  bool pc() const { return !orthogonal && population_ok; }
  bool pspc() const { return !orthogonal && phase_ok; }
};

TransferReport classify_transfer(const PropagatorMatrix& v,
                                 const StateVector& psi_i,
                                 const StateVector& psi_f,
                                 const ClassifyOptions& opts = {});

/// Unitary R with R psi_i = e1 and R psi_f in span{e1, e2} (= e2 when the
/// pair is orthogonal). Throws kParallelVectors.
CMatrix build_rotation(const StateVector& psi_i, const StateVector& psi_f);

/// max |(R V R^dagger)_jk| over entries coupling {1,2} to {3..N}.
double block_residual(const CMatrix& v, const CMatrix& r);

enum class Scenario {
  kPspcControl,
  kPcControl,
  kPspiEff2lsOrtho,
  kPiEff2lsOrtho,
  kPspcEff2lsNonortho,
  kPcEff2lsNonortho,
};

inline constexpr std::array<Scenario, 6> kAllScenarios = {
    Scenario::kPspcControl,     Scenario::kPcControl,
    Scenario::kPspiEff2lsOrtho, Scenario::kPiEff2lsOrtho,
    Scenario::kPspcEff2lsNonortho, Scenario::kPcEff2lsNonortho};

std::string_view scenario_name(Scenario s);
Scenario parse_scenario(std::string_view name);

/// Number of real pulse conditions; tabulated values for 2 <= N <= 10,
/// closed formulas beyond. Throws kDomainError for N < 2.
int condition_count(int n, Scenario s);

/// The closed formula alone (differs from the table only at N = 2, PSPI).
int condition_count_formula(int n, Scenario s);

/// True where the tabulated value and the formula disagree.
bool condition_count_flagged(int n, Scenario s);

/// Literal condition table, rows N = 2..10, columns in kAllScenarios order.
extern const std::array<std::array<int, 6>, 9> kConditionTable;

}  // namespace floqinv

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
#include <string>
#include <string_view>
#include <vector>

#include "floqinv/error.hpp"
#include "floqinv/floquet.hpp"
#include "floqinv/model.hpp"
#include "floqinv/nlevel.hpp"
#include "floqinv/propagation.hpp"
#include "floqinv/su2.hpp"

namespace floqinv {

enum class TargetMode { kPI, kPSPI, kPC, kPSPC };

std::string_view target_mode_name(TargetMode mode);
TargetMode parse_target_mode(std::string_view name);
inline bool phase_selective(TargetMode m) {
  return m == TargetMode::kPSPI || m == TargetMode::kPSPC;
}

/// Pulse parameter by name: amplitude, carrier, phase, duration, sample<k>
/// (k counted from 1).
PulseShape apply_parameter(const PulseShape& pulse, std::string_view name,
                           double value);
double read_parameter(const PulseShape& pulse, std::string_view name);

struct FreeParameter {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
};

struct ControlTarget {
  StateVector initial;
  StateVector final;
  TargetMode mode = TargetMode::kPI;
  /// Target phase for the phase-selective modes: psi(T) = e^{i beta} psi_f.
  double beta = 0.0;
};

struct ControlProblem {
  NLevelSystem system;
  PulseShape family;
  std::vector<FreeParameter> free;
  ControlTarget target;
  long budget = 2000;
  IntegratorConfig integrator;
  /// Tolerance for the attached transfer report and criteria.
  double report_tol = 1e-6;
  int threads = 1;

  void validate() const;
  PulseShape pulse_for(const std::vector<double>& params) const;
};

/// Population modes: sum_j (|psi_j(T)|^2 - |psi_f_j|^2)^2.
/// Phase-selective modes: |psi(T) - e^{i beta} psi_f|^2.
double objective(const ControlProblem& problem, const std::vector<double>& params);

struct OptimizeResult {
  std::vector<double> best_params;
  double best_value = 0.0;
  long evaluations = 0;
  int restarts_run = 0;
  bool converged = false;
  PulseShape best_pulse;
  PropagatorMatrix propagator;
  TransferReport report;
  /// Sufficient eigenvector test on V (N = 2) or on the polar-projected
  /// 2x2 block of the rotated V (N > 2); absent when degenerate.
  std::optional<SufficientPiCheck> sufficient;
};

/// Thrown by optimize() when the evaluation budget ran out before any
/// restart either met the target or converged; carries the best point found.
class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(OptimizeResult best);
  const OptimizeResult& best() const { return best_; }

 private:
  OptimizeResult best_;
};

/// Nelder-Mead in the unit-scaled bound box, restarted from 2d + 1 Halton
/// points. Restarts are examined in index order and the search stops at the
/// first one that drives the objective below 1e-12; otherwise the lowest
/// value wins. The outcome does not depend on the thread count.
OptimizeResult optimize(const ControlProblem& problem);

/// Builds the report fields attached to an optimization result.
OptimizeResult evaluate_point(const ControlProblem& problem,
                              const std::vector<double>& params);

struct ScanAxis {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  int points = 1;

  double value(int k) const;
};

struct ScanTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Rows in lexicographic order of grid indices (first axis slowest): axis
/// values, final populations, objective, delta (N = 2), spacing residual,
/// sufficient flag, block residual (N > 2). Missing quantities are NaN.
ScanTable scan(const ControlProblem& problem, const std::vector<ScanAxis>& grid);

void write_scan_csv(std::ostream& out, const ScanTable& table);

}  // namespace floqinv

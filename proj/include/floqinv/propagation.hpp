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

#include <functional>
#include <iosfwd>

#include "floqinv/linalg.hpp"
#include "floqinv/model.hpp"

namespace floqinv {

struct IntegratorConfig {
  /// First trial step.
  double step_init = 0.01;
  /// Local error target: max-norm difference between one full step and two
  /// half steps.
  double tol = 1e-10;
  long max_steps = 20'000'000;
  /// Step cap; 0 selects an eighth of the carrier period (unbounded for
  /// carrier-free pulses).
  double max_step = 0.0;

  void validate() const;
};

/// U(t1, t0) together with its time interval.
class PropagatorMatrix {
 public:
  PropagatorMatrix(CMatrix entries, double t0, double t1)
      : entries_(std::move(entries)), t0_(t0), t1_(t1) {}

  /// Wraps a matrix that is not tied to a propagation interval.
  static PropagatorMatrix from_matrix(CMatrix entries) {
    return PropagatorMatrix(std::move(entries), 0.0, 0.0);
  }

  const CMatrix& matrix() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  double t0() const { return t0_; }
  double t1() const { return t1_; }
  double duration() const { return t1_ - t0_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

 private:
  CMatrix entries_;
  double t0_;
  double t1_;
};

CMatrix hamiltonian_at(const NLevelSystem& system, const PulseShape& pulse,
                       double t);

/// Called once per accepted step with the time and the current state.
using TrajectoryObserver = std::function<void(double, const CVector&)>;

/// Integrates i d/dt psi = H(t) psi from t0 to t1 with the exponential
/// midpoint rule under full/half-step error control. Step selection depends
/// only on the Hamiltonian, so the result equals propagator_over(...) * psi0
/// to rounding. Throws kStepLimitExceeded.
StateVector propagate_state(const NLevelSystem& system, const PulseShape& pulse,
                            const StateVector& psi0, double t0, double t1,
                            const IntegratorConfig& cfg = {},
                            const TrajectoryObserver& observer = {});

/// U(t1, t0); t1 < t0 integrates backwards.
PropagatorMatrix propagator_over(const NLevelSystem& system,
                                 const PulseShape& pulse, double t0, double t1,
                                 const IntegratorConfig& cfg = {});

/// Monodromy matrix V = U(T_support, 0).
PropagatorMatrix monodromy(const NLevelSystem& system, const PulseShape& pulse,
                           const IntegratorConfig& cfg = {});

/// chi = -1/2 * integral over the support of tr H(t) dt.
double global_phase_chi(const NLevelSystem& system, const PulseShape& pulse,
                        const IntegratorConfig& cfg = {});

/// Writes a trajectory CSV (t, Re psi_j, Im psi_j, |psi_j|^2) for
/// propagate_state over the pulse support.
StateVector write_trajectory_csv(std::ostream& out, const NLevelSystem& system,
                                 const PulseShape& pulse,
                                 const StateVector& psi0,
                                 const IntegratorConfig& cfg = {});

}  // namespace floqinv

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

#include "floqinv/control.hpp"
#include "floqinv/model.hpp"
#include "floqinv/propagation.hpp"

namespace floqinv {

/// Everything a CLI run needs, parsed from an INI-style key/value file:
///
///   [system]      levels, energies, dipole (rows split by ';', complex
///                 entries written as 0.5, 2i, 0.1-0.3i)
///   [pulse]       kind, amplitude, carrier, phase, duration, samples, repeats
///   [integrator]  tol, step_init, max_steps, max_step
///   [targets]     i, f (1-based levels), initial, final, beta, phase_locked
///   [control]     mode, free, budget
///   [bounds]      <parameter> = lower upper
///   [scan]        <parameter> = lower upper points
///   [output]      trajectory
///
/// Every number is parsed as a 64-bit float.
struct RunConfig {
  NLevelSystem system;
  PulseShape pulse;
  IntegratorConfig integrator;
  int level_i = 0;
  int level_f = 1;
  StateVector initial;
  StateVector final;
  double beta = 0.0;
  bool phase_locked = false;
  TargetMode mode = TargetMode::kPI;
  std::vector<FreeParameter> free;
  long budget = 2000;
  std::vector<ScanAxis> scan;
  std::optional<std::string> trajectory_path;

  /// Control problem assembled from the [control]/[bounds] blocks.
  ControlProblem control_problem(double report_tol, int threads) const;
};

/// Throws Error(kConfig) naming the offending key (or line, for syntax
/// errors).
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Canonical text of the resolved configuration, 17 significant digits.
std::string render_config(const RunConfig& cfg);

/// A [pulse] block that parse_config accepts.
std::string render_pulse(const PulseShape& pulse);

}  // namespace floqinv

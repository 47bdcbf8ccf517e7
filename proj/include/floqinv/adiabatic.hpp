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

#include <vector>

#include "floqinv/floquet.hpp"
#include "floqinv/model.hpp"
#include "floqinv/propagation.hpp"

namespace floqinv {

/// Partition of the pulse support into carrier cycles. Within period p the
/// field is replaced by the carrier times the envelope frozen at the period
/// midpoint.
struct PeriodDecomposition {
  std::vector<double> boundaries;  // P + 1 increasing times, first 0
  std::vector<double> frozen_envelope;
  std::vector<PulseShape> frozen_pulses;

  int periods() const { return static_cast<int>(frozen_pulses.size()); }
  double start(int p) const { return boundaries[static_cast<std::size_t>(p)]; }
  double length(int p) const {
    return boundaries[static_cast<std::size_t>(p) + 1] -
           boundaries[static_cast<std::size_t>(p)];
  }
};

/// One cycle of 2 pi / carrier per period starting at t = 0; a trailing
/// partial cycle is merged into the last period. Throws kNoCarrier.
PeriodDecomposition split_periods(const PulseShape& pulse);

/// Floquet spectrum of the frozen-envelope monodromy of period p.
FloquetSpectrum instantaneous_floquet(const NLevelSystem& system, int p,
                                      const PeriodDecomposition& decomp,
                                      const IntegratorConfig& cfg = {});

/// Per-period spectra with eigenvector frames sewn together: columns are
/// reordered by overlap with the previous period and phased so that
/// <theta_{p-1,j}, theta_{p,j}> is real positive.
struct AdiabaticTrack {
  PeriodDecomposition decomp;
  std::vector<FloquetSpectrum> spectra;
  /// Smallest matched frame overlap over all consecutive periods.
  double min_frame_overlap = 1.0;
};

/// Throws kFrameMatchFailure when a row of |Theta_p^dagger Theta_{p-1}| has
/// no entry >= 0.5.
AdiabaticTrack track_periods(const NLevelSystem& system,
                             const PulseShape& pulse,
                             const IntegratorConfig& cfg = {}, int threads = 1);

/// Theta_P exp(-i sum_p Omega^(p) d_p) Theta_1^dagger.
PropagatorMatrix adiabatic_propagator(const AdiabaticTrack& track);
PropagatorMatrix adiabatic_propagator(const NLevelSystem& system,
                                      const PulseShape& pulse,
                                      const IntegratorConfig& cfg = {});

/// prod_p Theta_p e^{-i Omega^(p) d_p} Theta_p^dagger (later periods on the
/// left); differs from the exact propagator only through envelope freezing.
PropagatorMatrix frozen_product_propagator(const AdiabaticTrack& track);

struct AdiabaticCriterion {
  /// sum_p (omega_f^(p) - omega_i^(p)) d_p, spacing unwrapped between periods.
  double integral = 0.0;
  long nearest_odd_pi = 0;
  double residual = 0.0;
  std::vector<double> spacings;
};

AdiabaticCriterion adiabatic_criterion(const AdiabaticTrack& track, int i,
                                       int f);
AdiabaticCriterion adiabatic_criterion(const NLevelSystem& system,
                                       const PulseShape& pulse, int i, int f,
                                       const IntegratorConfig& cfg = {});

}  // namespace floqinv

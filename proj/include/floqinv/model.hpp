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

#include <string_view>
#include <vector>

#include "floqinv/linalg.hpp"

namespace floqinv {

/// N-level system: bare level energies and the dipole matrix entering
/// H_jk(t) = eps_j delta_jk - mu_jk E(t). hbar = 1, energies are angular
/// frequencies.
class NLevelSystem {
 public:
  /// Validates and stores the system; throws kDimensionMismatch or
  /// kHermiticityViolation.
  NLevelSystem(RVector energies, CMatrix dipole);

  int levels() const { return static_cast<int>(energies_.size()); }
  const RVector& energies() const { return energies_; }
  const CMatrix& dipole() const { return dipole_; }

  /// H(t) for a given field value.
  CMatrix hamiltonian(double field) const;

 private:
  RVector energies_;
  CMatrix dipole_;
};

/// Checks the invariants of a raw (energies, dipole, n_levels) triple and
/// returns the validated system.
NLevelSystem validate_system(int n_levels, const RVector& energies,
                             const CMatrix& dipole);

enum class PulseKind { kRectangular, kGaussian, kSin2, kSampled };

std::string_view pulse_kind_name(PulseKind kind);
PulseKind parse_pulse_kind(std::string_view name);

/// Finite-support scalar field E(t) = envelope(t) * cos(carrier * t + phase)
/// on [0, repeats * T], identically zero elsewhere.
///
/// Envelopes:
///   rectangular  E0
///   gaussian     E0 exp(-(t - T/2)^2 / (2 sigma^2)), sigma = T/8 (cut at +-4 sigma)
///   sin2         E0 sin^2(pi t / T)
///   sampled      E0 * piecewise-linear through (0, s_1, ..., s_n, 0) on the
///                uniform grid t_k = k T / (n + 1)
///
/// With repeats > 1 the single-pulse field is continued periodically
/// (E(t + T) = E(t) inside the support).
class PulseShape {
 public:
  static PulseShape rectangular(double amplitude, double carrier, double phase,
                                double duration);
  static PulseShape gaussian(double amplitude, double carrier, double phase,
                             double duration);
  static PulseShape sin2(double amplitude, double carrier, double phase,
                         double duration);
  static PulseShape sampled(double amplitude, double carrier, double phase,
                            double duration, std::vector<double> samples);

  PulseKind kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  double carrier() const { return carrier_; }
  double phase() const { return phase_; }
  double duration() const { return duration_; }
  int repeats() const { return repeats_; }
  const std::vector<double>& samples() const { return samples_; }

  /// End of the support, repeats * T.
  double support_end() const { return duration_ * repeats_; }

  /// Envelope of a single pulse at local time tau in [0, T].
  double envelope_at(double tau) const;

  /// Field value; exactly 0 outside [0, support_end()].
  double eval(double t) const;

  /// Sorted times where the field or its derivative may jump: support edges,
  /// period boundaries and sampled-envelope nodes.
  std::vector<double> breakpoints() const;

  PulseShape with_amplitude(double v) const;
  PulseShape with_carrier(double v) const;
  PulseShape with_phase(double v) const;
  PulseShape with_duration(double v) const;
  PulseShape with_sample(int index, double v) const;
  PulseShape repeated(int count) const;

 private:
  PulseShape(PulseKind kind, double amplitude, double carrier, double phase,
             double duration, std::vector<double> samples);
  void check() const;

  PulseKind kind_;
  double amplitude_;
  double carrier_;
  double phase_;
  double duration_;
  int repeats_ = 1;
  std::vector<double> samples_;
};

/// Free function form of PulseShape::eval.
inline double eval_field(const PulseShape& pulse, double t) {
  return pulse.eval(t);
}

/// Unit-norm state vector.
class StateVector {
 public:
  /// Throws kNormViolation unless |psi|^2 = 1 within 1e-12.
  explicit StateVector(CVector amplitudes);
  /// Same with an explicit norm tolerance (used for propagated states).
  StateVector(CVector amplitudes, double norm_tol);

  /// Normalizes a nonzero vector.
  static StateVector normalized(const CVector& v);
  static StateVector basis(int n, int index);

  int size() const { return static_cast<int>(amplitudes_.size()); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](int j) const { return amplitudes_(j); }
  RVector populations() const;

 private:
  CVector amplitudes_;
};

}  // namespace floqinv

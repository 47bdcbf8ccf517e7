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

#include "floqinv/adiabatic.hpp"

#include <cmath>
#include <string>

#include "floqinv/error.hpp"
#include "floqinv/parallel.hpp"

namespace floqinv {

PeriodDecomposition split_periods(const PulseShape& pulse) {
  if (!(pulse.carrier() > 0.0)) {
    throw Error(ErrorCode::kNoCarrier,
                "period splitting needs a carrier frequency > 0");
  }
  const double length = pulse.support_end();
  if (!(length > 0.0)) {
    throw Error(ErrorCode::kDomainError, "pulse has empty support");
  }
  const double cycle = kTwoPi / pulse.carrier();
  auto count = static_cast<long>(std::floor(length / cycle * (1.0 + 1e-12)));
  if (count < 1) count = 1;

  PeriodDecomposition out;
  for (long k = 0; k < count; ++k) {
    out.boundaries.push_back(static_cast<double>(k) * cycle);
  }
  out.boundaries.push_back(length);
  for (long k = 0; k < count; ++k) {
    const double mid =
        0.5 * (out.boundaries[static_cast<std::size_t>(k)] +
               out.boundaries[static_cast<std::size_t>(k) + 1]);
    const double local = std::fmod(mid, pulse.duration());
    const double env = pulse.envelope_at(local);
    out.frozen_envelope.push_back(env);
    out.frozen_pulses.push_back(
        PulseShape::rectangular(env, pulse.carrier(), pulse.phase(),
                                pulse.duration())
            .repeated(pulse.repeats()));
  }
  return out;
}

FloquetSpectrum instantaneous_floquet(const NLevelSystem& system, int p,
                                      const PeriodDecomposition& decomp,
                                      const IntegratorConfig& cfg) {
  if (p < 0 || p >= decomp.periods()) {
    throw Error(ErrorCode::kInvalidArgument,
                "period index " + std::to_string(p) + " out of range");
  }
  const double t0 = decomp.start(p);
  const double d = decomp.length(p);
  const PropagatorMatrix v = propagator_over(
      system, decomp.frozen_pulses[static_cast<std::size_t>(p)], t0, t0 + d,
      cfg);
  return floquet_spectrum(v.matrix(), d);
}

AdiabaticTrack track_periods(const NLevelSystem& system,
                             const PulseShape& pulse,
                             const IntegratorConfig& cfg, int threads) {
  AdiabaticTrack track;
  track.decomp = split_periods(pulse);
  const int count = track.decomp.periods();
  track.spectra.resize(static_cast<std::size_t>(count));
  parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t p) {
    track.spectra[p] =
        instantaneous_floquet(system, static_cast<int>(p), track.decomp, cfg);
  });

  const int n = system.levels();
  for (int p = 1; p < count; ++p) {
    const FloquetSpectrum& prev = track.spectra[static_cast<std::size_t>(p - 1)];
    FloquetSpectrum& cur = track.spectra[static_cast<std::size_t>(p)];
    // overlap(new column, previous column)
    const Eigen::MatrixXd overlap =
        (cur.theta.adjoint() * prev.theta).cwiseAbs();
    for (int row = 0; row < n; ++row) {
      if (overlap.row(row).maxCoeff() < 0.5) {
        throw Error(ErrorCode::kFrameMatchFailure,
                    "Floquet frames of periods " + std::to_string(p) + " and " +
                        std::to_string(p + 1) +
                        " do not match (adiabatic following broken)");
      }
    }
    std::vector<int> source(static_cast<std::size_t>(n), -1);
    std::vector<bool> used_new(static_cast<std::size_t>(n), false);
    std::vector<bool> used_prev(static_cast<std::size_t>(n), false);
    for (int round = 0; round < n; ++round) {
      double best = -1.0;
      int bn = -1;
      int bp = -1;
      for (int j = 0; j < n; ++j) {
        if (used_prev[static_cast<std::size_t>(j)]) continue;
        for (int c = 0; c < n; ++c) {
          if (used_new[static_cast<std::size_t>(c)]) continue;
          if (overlap(c, j) > best) {
            best = overlap(c, j);
            bn = c;
            bp = j;
          }
        }
      }
      used_new[static_cast<std::size_t>(bn)] = true;
      used_prev[static_cast<std::size_t>(bp)] = true;
      source[static_cast<std::size_t>(bp)] = bn;
      track.min_frame_overlap = std::min(track.min_frame_overlap, best);
    }
    FloquetSpectrum sewn = cur;
    for (int j = 0; j < n; ++j) {
      const int c = source[static_cast<std::size_t>(j)];
      CVector vec = cur.theta.col(c);
      const Complex proj = prev.theta.col(j).dot(vec);
      if (std::abs(proj) > 0.0) vec *= std::conj(proj) / std::abs(proj);
      sewn.theta.col(j) = vec;
      sewn.quasienergies(j) = cur.quasienergies(c);
    }
    cur = std::move(sewn);
  }
  return track;
}

PropagatorMatrix adiabatic_propagator(const AdiabaticTrack& track) {
  const auto& first = track.spectra.front();
  const auto& last = track.spectra.back();
  const auto n = first.quasienergies.size();
  CVector phases(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double accumulated = 0.0;
    for (int p = 0; p < track.decomp.periods(); ++p) {
      accumulated += track.spectra[static_cast<std::size_t>(p)].quasienergies(j) *
                     track.decomp.length(p);
    }
    phases(j) = std::exp(Complex(0.0, -accumulated));
  }
  return PropagatorMatrix(last.theta * phases.asDiagonal() * first.theta.adjoint(),
                          track.decomp.boundaries.front(),
                          track.decomp.boundaries.back());
}

PropagatorMatrix adiabatic_propagator(const NLevelSystem& system,
                                      const PulseShape& pulse,
                                      const IntegratorConfig& cfg) {
  return adiabatic_propagator(track_periods(system, pulse, cfg));
}

PropagatorMatrix frozen_product_propagator(const AdiabaticTrack& track) {
  const auto n = track.spectra.front().quasienergies.size();
  CMatrix v = CMatrix::Identity(n, n);
  for (int p = 0; p < track.decomp.periods(); ++p) {
    const auto& s = track.spectra[static_cast<std::size_t>(p)];
    CVector phases(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      phases(j) = std::exp(Complex(0.0, -s.quasienergies(j) * track.decomp.length(p)));
    }
    v = s.theta * phases.asDiagonal() * s.theta.adjoint() * v;
  }
  return PropagatorMatrix(std::move(v), track.decomp.boundaries.front(),
                          track.decomp.boundaries.back());
}

AdiabaticCriterion adiabatic_criterion(const AdiabaticTrack& track, int i,
                                       int f) {
  const int n = static_cast<int>(track.spectra.front().quasienergies.size());
  if (i < 0 || f < 0 || i >= n || f >= n || i == f) {
    throw Error(ErrorCode::kInvalidArgument,
                "adiabatic criterion needs two distinct level indices");
  }
  AdiabaticCriterion out;
  double previous = 0.0;
  for (int p = 0; p < track.decomp.periods(); ++p) {
    const auto& s = track.spectra[static_cast<std::size_t>(p)];
    const double zone = s.zone_width();
    const double raw = s.quasienergies(f) - s.quasienergies(i);
    const double spacing = raw + zone * std::round((previous - raw) / zone);
    out.spacings.push_back(spacing);
    out.integral += spacing * track.decomp.length(p);
    previous = spacing;
  }
  out.residual = odd_pi_distance(out.integral, &out.nearest_odd_pi);
  return out;
}

AdiabaticCriterion adiabatic_criterion(const NLevelSystem& system,
                                       const PulseShape& pulse, int i, int f,
                                       const IntegratorConfig& cfg) {
  return adiabatic_criterion(track_periods(system, pulse, cfg), i, f);
}

}  // namespace floqinv

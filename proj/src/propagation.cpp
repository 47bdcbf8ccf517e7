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

#include "floqinv/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "floqinv/error.hpp"
#include "floqinv/format.hpp"

namespace floqinv {

void IntegratorConfig::validate() const {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "integrator tol must be > 0");
  }
  if (max_steps <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "integrator max_steps must be > 0");
  }
  if (!(step_init > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "integrator step_init must be > 0");
  }
  if (max_step < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "integrator max_step must be >= 0");
  }
}

CMatrix hamiltonian_at(const NLevelSystem& system, const PulseShape& pulse,
                       double t) {
  return system.hamiltonian(pulse.eval(t));
}

namespace {

double step_cap(const PulseShape& pulse, const IntegratorConfig& cfg) {
  if (cfg.max_step > 0.0) return cfg.max_step;
  if (pulse.carrier() > 0.0) return kTwoPi / pulse.carrier() / 8.0;
  return std::numeric_limits<double>::infinity();
}

// Drives the adaptive exponential-midpoint scheme from t0 to t1 and hands
// every accepted step propagator to `accept(t_new, step)`.
template <typename Accept>
void integrate(const NLevelSystem& system, const PulseShape& pulse, double t0,
               double t1, const IntegratorConfig& cfg, Accept&& accept) {
  cfg.validate();
  if (!std::isfinite(t0) || !std::isfinite(t1)) {
    throw Error(ErrorCode::kInvalidArgument, "propagation times must be finite");
  }
  if (t1 == t0) return;
  const double dir = t1 > t0 ? 1.0 : -1.0;

  // Segment ends: interior breakpoints in travel order, then t1.
  std::vector<double> stops;
  for (double b : pulse.breakpoints()) {
    if (dir > 0 ? (b > t0 && b < t1) : (b < t0 && b > t1)) stops.push_back(b);
  }
  if (dir < 0) std::reverse(stops.begin(), stops.end());
  stops.push_back(t1);

  const double cap = step_cap(pulse, cfg);
  const double h_floor = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max({1.0, std::abs(t0), std::abs(t1)});
  double h = std::min(cfg.step_init, cap);
  long attempts = 0;
  double t = t0;

  auto frozen_step = [&](double t_mid, double dt) {
    return expm_hermitian(system.hamiltonian(pulse.eval(t_mid)), dt);
  };

  for (double seg_end : stops) {
    while (dir * (seg_end - t) > 0.0) {
      if (++attempts > cfg.max_steps) {
        throw Error(ErrorCode::kStepLimitExceeded,
                    "step limit " + std::to_string(cfg.max_steps) +
                        " reached at t = " + std::to_string(t));
      }
      const double remaining = std::abs(seg_end - t);
      bool lands = false;
      double hh = h;
      if (hh >= remaining * (1.0 - 1e-12)) {
        hh = remaining;
        lands = true;
      }
      const double dt = dir * hh;
      const CMatrix full = frozen_step(t + 0.5 * dt, dt);
      const CMatrix first = frozen_step(t + 0.25 * dt, 0.5 * dt);
      const CMatrix second = frozen_step(t + 0.75 * dt, 0.5 * dt);
      const CMatrix two = second * first;
      const double err = max_abs(full - two);
      if (err <= cfg.tol || hh <= h_floor) {
        t = lands ? seg_end : t + dt;
        accept(t, two);
        double factor = err > 0.0 ? 0.9 * std::cbrt(cfg.tol / err) : 2.0;
        factor = std::clamp(factor, 0.5, 2.0);
        if (!lands || factor < 1.0) h = std::min(hh * factor, cap);
      } else {
        h = 0.5 * hh;
      }
    }
  }
}

}  // namespace

StateVector propagate_state(const NLevelSystem& system, const PulseShape& pulse,
                            const StateVector& psi0, double t0, double t1,
                            const IntegratorConfig& cfg,
                            const TrajectoryObserver& observer) {
  if (psi0.size() != system.levels()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "state dimension does not match the system");
  }
  CVector psi = psi0.amplitudes();
  if (observer) observer(t0, psi);
  integrate(system, pulse, t0, t1, cfg, [&](double t, const CMatrix& step) {
    psi = step * psi;
    if (observer) observer(t, psi);
  });
  return StateVector(std::move(psi), 1e-9);
}

PropagatorMatrix propagator_over(const NLevelSystem& system,
                                 const PulseShape& pulse, double t0, double t1,
                                 const IntegratorConfig& cfg) {
  const int n = system.levels();
  CMatrix u = CMatrix::Identity(n, n);
  integrate(system, pulse, t0, t1, cfg,
            [&](double, const CMatrix& step) { u = step * u; });
  return PropagatorMatrix(std::move(u), t0, t1);
}

PropagatorMatrix monodromy(const NLevelSystem& system, const PulseShape& pulse,
                           const IntegratorConfig& cfg) {
  return propagator_over(system, pulse, 0.0, pulse.support_end(), cfg);
}

namespace {

double simpson(const PulseShape& pulse, double a, double b, long intervals) {
  const double h = (b - a) / static_cast<double>(intervals);
  // Interior points only; the endpoints are evaluated one ulp inside so that
  // a field discontinuity at a breakpoint is taken from the segment's side.
  const double fa = pulse.eval(std::nextafter(a, b));
  const double fb = pulse.eval(std::nextafter(b, a));
  double odd = 0.0;
  double even = 0.0;
  for (long k = 1; k < intervals; ++k) {
    const double f = pulse.eval(a + static_cast<double>(k) * h);
    (k % 2 == 1 ? odd : even) += f;
  }
  return h / 3.0 * (fa + fb + 4.0 * odd + 2.0 * even);
}

double field_integral(const PulseShape& pulse, const IntegratorConfig& cfg) {
  const double cap = step_cap(pulse, cfg);
  const auto points = pulse.breakpoints();
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < points.size(); ++s) {
    const double a = points[s];
    const double b = points[s + 1];
    if (!(b > a)) continue;
    long n = std::isfinite(cap)
                 ? 4 * static_cast<long>(std::ceil((b - a) / cap))
                 : 64;
    n = std::max<long>(n + n % 2, 8);
    double prev = simpson(pulse, a, b, n);
    for (int level = 0; level < 24; ++level) {
      n *= 2;
      const double next = simpson(pulse, a, b, n);
      const bool done = std::abs(next - prev) <= 1e-13 * (1.0 + std::abs(next));
      prev = next;
      if (done) break;
    }
    total += prev;
  }
  return total;
}

}  // namespace

double global_phase_chi(const NLevelSystem& system, const PulseShape& pulse,
                        const IntegratorConfig& cfg) {
  const double length = pulse.support_end();
  const double energy_sum = system.energies().sum();
  const double dipole_trace = system.dipole().diagonal().real().sum();
  double trace_integral = energy_sum * length;
  if (dipole_trace != 0.0 && length > 0.0) {
    trace_integral -= dipole_trace * field_integral(pulse, cfg);
  }
  return -0.5 * trace_integral;
}

StateVector write_trajectory_csv(std::ostream& out, const NLevelSystem& system,
                                 const PulseShape& pulse,
                                 const StateVector& psi0,
                                 const IntegratorConfig& cfg) {
  const int n = system.levels();
  out << "t";
  for (int j = 1; j <= n; ++j) {
    out << ",re_psi" << j << ",im_psi" << j << ",pop" << j;
  }
  out << '\n';
  return propagate_state(
      system, pulse, psi0, 0.0, pulse.support_end(), cfg,
      [&](double t, const CVector& psi) {
        out << fmt_real(t);
        for (int j = 0; j < n; ++j) {
          out << ',' << fmt_real(psi(j).real()) << ',' << fmt_real(psi(j).imag())
              << ',' << fmt_real(std::norm(psi(j)));
        }
        out << '\n';
      });
}

}  // namespace floqinv

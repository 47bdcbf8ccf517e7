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

#include <cmath>
#include <random>

#include "floqinv/linalg.hpp"
#include "floqinv/model.hpp"

namespace floqinv::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  Complex cnormal() { return {normal(), normal()}; }

  CMatrix hermitian(int n, double scale) {
    CMatrix a(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) a(r, c) = cnormal();
    }
    CMatrix h = 0.5 * scale * (a + a.adjoint());
    return h;
  }

  // Haar-distributed via QR with phase correction.
  CMatrix unitary(int n) {
    CMatrix a(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) a(r, c) = cnormal();
    }
    Eigen::HouseholderQR<CMatrix> qr(a);
    CMatrix q = qr.householderQ();
    const CMatrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < n; ++c) {
      const Complex d = rr(c, c);
      if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
    }
    return q;
  }

  CVector unit_vector(int n) {
    CVector v(n);
    for (int j = 0; j < n; ++j) v(j) = cnormal();
    return v / v.norm();
  }

  NLevelSystem system(int n, bool permanent_dipoles) {
    RVector e(n);
    for (int j = 0; j < n; ++j) e(j) = uniform(0.0, 2.0);
    CMatrix mu = hermitian(n, 0.5);
    if (!permanent_dipoles) mu.diagonal().setZero();
    return NLevelSystem(e, mu);
  }

  PulseShape pulse() {
    const double amp = uniform(0.02, 0.3);
    const double carrier = uniform(0.3, 2.0);
    const double phase = uniform(-kPi, kPi);
    const double duration = uniform(5.0, 40.0);
    switch (integer(0, 3)) {
      case 0: return PulseShape::rectangular(amp, carrier, phase, duration);
      case 1: return PulseShape::gaussian(amp, carrier, phase, duration);
      case 2: return PulseShape::sin2(amp, carrier, phase, duration);
      default: {
        std::vector<double> samples(static_cast<std::size_t>(integer(2, 8)));
        for (double& s : samples) s = uniform(-1.0, 1.0);
        return PulseShape::sampled(amp, carrier, phase, duration, samples);
      }
    }
  }

 private:
  std::mt19937_64 engine_;
};

inline CMatrix antidiag(Complex top, Complex bottom) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = top;
  m(1, 0) = bottom;
  return m;
}

inline NLevelSystem two_level(double e1 = 0.0, double e2 = 1.0) {
  RVector e(2);
  e << e1, e2;
  CMatrix mu(2, 2);
  mu << 0.0, 1.0, 1.0, 0.0;
  return NLevelSystem(e, mu);
}

// Haar unitary whose column `col` is a unit-modulus multiple of e_row; built
// as a Householder reflection applied to a random unitary, so no other entry
// is zeroed by hand.
inline CMatrix unitary_with_column(Rng& rng, int n, int col, int row) {
  const CMatrix w = rng.unitary(n);
  const CVector x = w.col(col);
  const Complex alpha = -std::exp(Complex(0.0, std::arg(x(row))));
  CVector u = x;
  u(row) -= alpha;
  const CMatrix h = CMatrix::Identity(n, n) - 2.0 * u * u.adjoint() / u.squaredNorm();
  return h * w;
}

// Resonant rectangular pulse with RWA area pi over `cycles` carrier periods.
inline PulseShape rabi_pi_pulse(int cycles, double area = kPi) {
  const double duration = kTwoPi * cycles;
  return PulseShape::rectangular(area / duration, 1.0, 0.0, duration);
}

}  // namespace floqinv::testing

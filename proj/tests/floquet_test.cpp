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

#include <cmath>

#include <gtest/gtest.h>

#include "floqinv/error.hpp"
#include "floqinv/floquet.hpp"
#include "floqinv/propagation.hpp"
#include "floqinv/su2.hpp"
#include "support.hpp"

namespace floqinv {
namespace {

using testing::antidiag;
using testing::Rng;

CMatrix reconstruct(const FloquetSpectrum& s) {
  CVector phases(s.quasienergies.size());
  for (Eigen::Index j = 0; j < phases.size(); ++j) {
    phases(j) = std::exp(Complex(0.0, -s.quasienergies(j) * s.period));
  }
  return s.theta * phases.asDiagonal() * s.theta.adjoint();
}

FloquetSpectrum diagonal_spectrum(double w1, double w2, double period) {
  CMatrix v = CMatrix::Zero(2, 2);
  v(0, 0) = std::exp(Complex(0.0, -w1 * period));
  v(1, 1) = std::exp(Complex(0.0, -w2 * period));
  return floquet_spectrum(v, period);
}

TEST(FloquetSpectrum, FreeEvolutionCommensurate) {
  // T = 3 * 2 pi / 0.3 makes omega_0 = 0.1, so 0.3 folds onto 0 and V = I.
  const auto s = testing::two_level(0.0, 0.3);
  const double period = kTwoPi / 0.3 * 3.0;
  const auto off = PulseShape::rectangular(0.0, 1.0, 0.0, period);
  const auto spec = floquet_spectrum(monodromy(s, off).matrix(), period);
  EXPECT_NEAR(spec.zone_width(), 0.1, 1e-15);
  for (int j = 0; j < 2; ++j) {
    const double w = spec.quasienergies(j);
    EXPECT_LT(std::min(w, spec.zone_width() - w), 1e-9);
  }
}

TEST(FloquetSpectrum, FreeEvolutionInsideZone) {
  // Zero field gives omega_j = eps_j mod omega_0.
  RVector e(3);
  e << 0.05, 0.2, 0.33;
  const NLevelSystem s(e, CMatrix::Zero(3, 3));
  const double period = 7.0;
  const auto off = PulseShape::rectangular(0.0, 0.0, 0.0, period);
  const auto spec = floquet_spectrum(monodromy(s, off).matrix(), period);
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(spec.quasienergies(j), wrap_positive(e(j), spec.zone_width()), 1e-10);
  }
}

TEST(FloquetSpectrum, PlusMinusI) {
  CMatrix v = CMatrix::Zero(2, 2);
  v(0, 0) = Complex(0.0, 1.0);
  v(1, 1) = Complex(0.0, -1.0);
  const auto spec = floquet_spectrum(v, 1.0);
  EXPECT_NEAR(spec.quasienergies(0), 1.5 * kPi, 1e-12);
  EXPECT_NEAR(spec.quasienergies(1), 0.5 * kPi, 1e-12);
  EXPECT_NEAR(spec.reduced()(1), 0.25, 1e-12);
}

TEST(FloquetSpectrum, ReconstructionOfRandomUnitaries) {
  Rng rng(20);
  for (int k = 0; k < 100; ++k) {
    const int n = rng.integer(2, 6);
    const CMatrix v = rng.unitary(n);
    const double period = rng.uniform(0.5, 50.0);
    const auto spec = floquet_spectrum(v, period);
    EXPECT_LT(max_abs(reconstruct(spec) - v), 1e-8);
    EXPECT_LT(unitarity_error(spec.theta), 1e-9);
    for (Eigen::Index j = 0; j < n; ++j) {
      EXPECT_GE(spec.quasienergies(j), 0.0);
      EXPECT_LT(spec.quasienergies(j), spec.zone_width());
    }
  }
}

TEST(FloquetSpectrum, AssignsColumnsToNearestLevels) {
  // Weakly perturbed diagonal: each eigenvector stays on its bare level.
  Rng rng(21);
  RVector e(4);
  e << 0.1, 0.7, 1.9, 2.6;
  CMatrix h = e.cast<Complex>().asDiagonal();
  h += rng.hermitian(4, 1e-3);
  const CMatrix v = expm_hermitian(h, 1.0);
  const auto spec = floquet_spectrum(v, 1.0);
  for (int j = 0; j < 4; ++j) {
    EXPECT_GT(std::abs(spec.theta(j, j)), 0.99);
    EXPECT_NEAR(spec.theta(j, j).imag(), 0.0, 1e-12);
    EXPECT_GT(spec.theta(j, j).real(), 0.0);
  }
}

TEST(FloquetSpectrum, RejectsBadPeriod) {
  EXPECT_THROW(floquet_spectrum(CMatrix::Identity(2, 2), 0.0), Error);
  EXPECT_THROW(floquet_spectrum(CMatrix::Identity(2, 2), -1.0), Error);
}

TEST(InversionCriterion, OddPiSpacing) {
  const double period = 3.0;
  const auto c = inversion_criterion(diagonal_spectrum(0.0, kPi / period, period), 0, 1, 1e-9);
  EXPECT_TRUE(c.satisfied);
  EXPECT_EQ(c.n, 0);
  EXPECT_NEAR(c.residual, 0.0, 1e-12);
}

TEST(InversionCriterion, QuarterZoneFails) {
  const double period = 3.0;
  const auto spec = diagonal_spectrum(0.0, kTwoPi / period * 0.25, period);
  const auto c = inversion_criterion(spec, 0, 1, 1e-6);
  EXPECT_FALSE(c.satisfied);
  EXPECT_NEAR(c.residual, 0.5 * kPi, 1e-12);
}

TEST(InversionCriterion, RabiPulse) {
  const auto p = testing::rabi_pi_pulse(100);
  const auto v = monodromy(testing::two_level(), p);
  const auto c = inversion_criterion(floquet_spectrum(v.matrix(), v.duration()), 0, 1,
                                     1e-3 * kPi);
  EXPECT_TRUE(c.satisfied);
}

TEST(InversionCriterion, SpacingInvariantUnderGlobalPhase) {
  Rng rng(22);
  for (int k = 0; k < 50; ++k) {
    const CMatrix v = rng.unitary(3);
    const Complex g = std::exp(Complex(0.0, rng.uniform(-kPi, kPi)));
    const auto a = inversion_criterion(floquet_spectrum(v, 2.0), 0, 2, 1e-6);
    const auto b = inversion_criterion(floquet_spectrum(g * v, 2.0), 0, 2, 1e-6);
    EXPECT_NEAR(a.residual, b.residual, 1e-9);
  }
}

TEST(Orbit, IdentityRepeats) {
  Rng rng(23);
  const StateVector psi(rng.unit_vector(3));
  const auto o = orbit(CMatrix::Identity(3, 3), psi, 5);
  ASSERT_EQ(o.size(), 5u);
  for (const auto& s : o) EXPECT_EQ((s.amplitudes() - psi.amplitudes()).norm(), 0.0);
}

TEST(Orbit, PiPropagatorContainsMirrorImages) {
  const auto o = orbit(antidiag(1.0, -1.0), StateVector::basis(2, 0), 4);
  ASSERT_EQ(o.size(), 4u);
  EXPECT_LT((o[2].amplitudes() + o[0].amplitudes()).norm(), 1e-15);
  EXPECT_LT((o[3].amplitudes() + o[1].amplitudes()).norm(), 1e-15);
  const CMatrix v4 = antidiag(1.0, -1.0) * o[3].amplitudes();
  EXPECT_LT((v4 - o[0].amplitudes()).norm(), 1e-15);
}

TEST(Orbit, RationalQuasienergiesClose) {
  // omega_j T / 2 pi = n_j / m with m = 5.
  Rng rng(24);
  const int m = 5;
  const CMatrix theta = rng.unitary(3);
  CVector phases(3);
  const int numerators[] = {0, 2, 3};
  for (int j = 0; j < 3; ++j) {
    phases(j) = std::exp(Complex(0.0, -kTwoPi * numerators[j] / m));
  }
  const CMatrix v = theta * phases.asDiagonal() * theta.adjoint();
  const StateVector psi(rng.unit_vector(3));
  const auto o = orbit(v, psi, m);
  const CVector back = v * o.back().amplitudes();
  const Complex overlap = psi.amplitudes().dot(back);
  EXPECT_NEAR(std::abs(overlap), 1.0, 1e-8);
  EXPECT_LT((back - overlap * psi.amplitudes()).norm(), 1e-8);
}

TEST(Orbit, UnitNorms) {
  Rng rng(25);
  const CMatrix v = rng.unitary(4);
  for (const auto& s : orbit(v, StateVector(rng.unit_vector(4)), 50)) {
    EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-10);
  }
}

TEST(RationalApprox, Half) {
  const auto r = rational_approx(diagonal_spectrum(0.0, 0.5 * kTwoPi, 1.0), 20, 1e-9);
  EXPECT_TRUE(r.rational);
  EXPECT_EQ(r.m, 2);
}

TEST(RationalApprox, Quarter) {
  const auto r = rational_approx(diagonal_spectrum(0.0, 0.25 * kTwoPi, 1.0), 20, 1e-9);
  EXPECT_TRUE(r.rational);
  EXPECT_EQ(r.m, 4);
  ASSERT_EQ(r.numerators.size(), 2u);
  EXPECT_EQ(r.numerators[1], 1);
}

TEST(RationalApprox, GoldenRatioIsIrrational) {
  const auto r =
      rational_approx(diagonal_spectrum(0.0, 0.6180339887 * kTwoPi, 1.0), 20, 1e-9);
  EXPECT_FALSE(r.rational);
}

TEST(MonodromyPower, DoublePulseSquares) {
  Rng rng(26);
  for (int k = 0; k < 5; ++k) {
    const auto s = rng.system(rng.integer(2, 4), true);
    const auto p = rng.pulse();
    const CMatrix v = monodromy(s, p).matrix();
    const CMatrix v2 = monodromy(s, p.repeated(2)).matrix();
    EXPECT_LT(max_abs(v2 - v * v), 1e-8);
  }
}

}  // namespace
}  // namespace floqinv

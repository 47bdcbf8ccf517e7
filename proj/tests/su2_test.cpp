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

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "floqinv/error.hpp"
#include "floqinv/floquet.hpp"
#include "floqinv/su2.hpp"
#include "support.hpp"

namespace floqinv {
namespace {

using testing::antidiag;
using testing::Rng;

constexpr double kHalfPi = 0.5 * kPi;

Complex cis(double x) { return std::exp(Complex(0.0, x)); }

TEST(DecomposeSu2, Identity) {
  const Su2Params p = decompose_su2(CMatrix::Identity(2, 2));
  EXPECT_EQ(p.chi, 0.0);
  EXPECT_EQ(p.delta1, 0.0);
  EXPECT_EQ(p.delta2, 0.0);
  EXPECT_EQ(p.delta, 0.0);
}

TEST(DecomposeSu2, AntidiagonalPi) {
  const Su2Params p = decompose_su2(antidiag(1.0, -1.0));
  EXPECT_NEAR(p.delta, kHalfPi, 1e-15);
  EXPECT_NEAR(p.chi, 0.0, 1e-15);
  EXPECT_NEAR(p.delta2, 0.0, 1e-15);
  EXPECT_EQ(p.delta1, 0.0);
}

TEST(DecomposeSu2, RejectsNonUnitary) {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 1) = 0.1;
  try {
    decompose_su2(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotUnitary);
  }
  EXPECT_THROW(decompose_su2(CMatrix::Identity(3, 3)), Error);
}

TEST(DecomposeSu2, RoundTripFromParameters) {
  Rng rng(10);
  for (int k = 0; k < 500; ++k) {
    const Su2Params in{rng.uniform(-kHalfPi + 1e-6, kHalfPi),
                       rng.uniform(-kPi + 1e-6, kPi), rng.uniform(-kPi + 1e-6, kPi),
                       rng.uniform(1e-3, kHalfPi - 1e-3)};
    const Su2Params out = decompose_su2(compose_su2(in));
    ASSERT_NEAR(out.chi, in.chi, 1e-12);
    ASSERT_NEAR(wrap_pi(out.delta1 - in.delta1), 0.0, 1e-12);
    ASSERT_NEAR(wrap_pi(out.delta2 - in.delta2), 0.0, 1e-12);
    ASSERT_NEAR(out.delta, in.delta, 1e-12);
  }
}

TEST(DecomposeSu2, RoundTripFromMatrices) {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const CMatrix v = rng.unitary(2);
    const Su2Params p = decompose_su2(v);
    EXPECT_LE(p.delta, kHalfPi);
    EXPECT_GE(p.delta, 0.0);
    EXPECT_GT(p.chi, -kHalfPi - 1e-15);
    EXPECT_LE(p.chi, kHalfPi + 1e-15);
    EXPECT_LT(max_abs(compose_su2(p) - v), 1e-12);
  }
}

TEST(ComposeSu2, ZeroIsIdentity) {
  EXPECT_EQ(max_abs(compose_su2({}) - CMatrix::Identity(2, 2)), 0.0);
}

TEST(ComposeSu2, Delta1IrrelevantAtPi) {
  for (double d1 : {0.0, 0.7, -2.0, 3.1}) {
    EXPECT_LT(max_abs(compose_su2({0.0, d1, 0.0, kHalfPi}) - antidiag(1.0, -1.0)), 1e-15);
  }
}

TEST(ComposeSu2, ModuliReadOff) {
  const CMatrix v = compose_su2({kPi / 4, 0.3, -0.2, 0.7});
  EXPECT_NEAR(std::abs(v(0, 0)), std::cos(0.7), 1e-15);
  EXPECT_NEAR(std::abs(v(0, 1)), std::sin(0.7), 1e-15);
  EXPECT_LT(unitarity_error(v), 1e-15);
}

TEST(PiAngleCheck, Examples) {
  const auto a = pi_angle_check(kHalfPi, 1e-6);
  EXPECT_TRUE(a.is_pi);
  EXPECT_EQ(a.k, 0);
  const auto b = pi_angle_check(3 * kHalfPi, 1e-6);
  EXPECT_TRUE(b.is_pi);
  EXPECT_EQ(b.k, 1);
  EXPECT_FALSE(pi_angle_check(kPi / 3, 1e-6).is_pi);
  EXPECT_TRUE(pi_angle_check(-kHalfPi, 1e-6).is_pi);
}

TEST(Eigensystem2, IdentityIsDegenerate) {
  const auto e = eigensystem_2ls(CMatrix::Identity(2, 2));
  EXPECT_LT(std::abs(e.zeta1 - 1.0), 1e-15);
  EXPECT_LT(std::abs(e.zeta2 - 1.0), 1e-15);
  EXPECT_LT(unitarity_error(e.vectors), 1e-15);
}

TEST(Eigensystem2, PiFormEigenvalues) {
  // exp(i chi) antidiag(e^{i D2}, -e^{-i D2}) has eigenvalues +-i e^{i chi}.
  const double chi = 0.4;
  const double d2 = 0.1;
  const CMatrix v = cis(chi) * antidiag(cis(d2), -cis(-d2));
  const auto e = eigensystem_2ls(v);
  EXPECT_LT(std::abs(e.zeta1 - Complex(0.0, 1.0) * cis(chi)), 1e-12);
  EXPECT_LT(std::abs(e.zeta2 + Complex(0.0, 1.0) * cis(chi)), 1e-12);
}

TEST(Eigensystem2, MatchesDenseSolver) {
  Rng rng(12);
  for (int k = 0; k < 200; ++k) {
    const CMatrix v = rng.unitary(2);
    const auto e = eigensystem_2ls(v);
    Eigen::ComplexEigenSolver<CMatrix> ref(v);
    const Complex r0 = ref.eigenvalues()(0);
    const Complex r1 = ref.eigenvalues()(1);
    const double direct = std::abs(e.zeta1 - r0) + std::abs(e.zeta2 - r1);
    const double swapped = std::abs(e.zeta1 - r1) + std::abs(e.zeta2 - r0);
    EXPECT_LT(std::min(direct, swapped), 1e-9);
    EXPECT_NEAR(std::abs(e.zeta1), 1.0, 1e-10);
    EXPECT_LT((v * e.vectors.col(0) - e.zeta1 * e.vectors.col(0)).norm(), 1e-9);
    EXPECT_LT((v * e.vectors.col(1) - e.zeta2 * e.vectors.col(1)).norm(), 1e-9);
    EXPECT_LT(std::abs(e.zeta1 * e.zeta2 - v.determinant()), 1e-10);
  }
}

TEST(Eigensystem2, CharacteristicRootsCrossCheck) {
  // zeta = e^{i chi}(c +- i sqrt(1 - c^2)), c = cos(delta) cos(Delta1).
  Rng rng(13);
  for (int k = 0; k < 100; ++k) {
    const Su2Params p{rng.uniform(-1.5, 1.5), rng.uniform(-3.0, 3.0),
                      rng.uniform(-3.0, 3.0), rng.uniform(0.0, kHalfPi)};
    const auto e = eigensystem_2ls(compose_su2(p));
    const double c = std::cos(p.delta) * std::cos(p.delta1);
    const Complex plus = cis(p.chi) * Complex(c, std::sqrt(1 - c * c));
    const Complex minus = cis(p.chi) * Complex(c, -std::sqrt(1 - c * c));
    EXPECT_LT(std::min(std::abs(e.zeta1 - plus) + std::abs(e.zeta2 - minus),
                       std::abs(e.zeta1 - minus) + std::abs(e.zeta2 - plus)),
              1e-9);
  }
}

TEST(SufficientPiCheck, AntidiagonalPi) {
  const auto s = sufficient_pi_check(eigensystem_2ls(antidiag(1.0, -1.0)), 1e-9);
  EXPECT_TRUE(s.is_pi_rotation);
  ASSERT_TRUE(s.alpha.has_value());
  EXPECT_NEAR(*s.alpha, -kHalfPi, 1e-12);
}

TEST(SufficientPiCheck, AlphaTracksDelta2) {
  Rng rng(14);
  for (int k = 0; k < 50; ++k) {
    const Su2Params p{rng.uniform(-1.5, 1.5), rng.uniform(-3.0, 3.0),
                      rng.uniform(-3.0, 3.0), kHalfPi};
    const auto s = sufficient_pi_check(eigensystem_2ls(compose_su2(p)), 1e-9);
    ASSERT_TRUE(s.is_pi_rotation);
    EXPECT_NEAR(wrap_pi(*s.alpha - (p.delta2 - kHalfPi)), 0.0, 1e-9);
  }
}

TEST(SufficientPiCheck, Delta1CounterexampleFails) {
  const CMatrix v = compose_su2({0.0, kHalfPi, 0.0, kPi / 4});
  const auto eig = eigensystem_2ls(v);
  const auto spec = floquet_spectrum(v, 1.0);
  EXPECT_TRUE(inversion_criterion(spec, 0, 1, 1e-12).satisfied);
  const auto s = sufficient_pi_check(eig, 1e-6);
  EXPECT_FALSE(s.is_pi_rotation);
  EXPECT_FALSE(s.alpha.has_value());
}

TEST(SufficientPiCheck, IdentityIsDegenerate) {
  try {
    sufficient_pi_check(eigensystem_2ls(CMatrix::Identity(2, 2)), 1e-6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateEigenvectors);
  }
}

TEST(PspiDelta2, Examples) {
  EXPECT_NEAR(pspi_delta2(0.0, 0.0), kPi, 1e-15);
  EXPECT_NEAR(pspi_delta2(-5.0, 0.0), kPi - 5.0, 1e-15);
  EXPECT_NEAR(pspi_delta2(0.0, kPi), 0.0, 1e-15);
}

TEST(PspiDelta2, RealizesTargetPhase) {
  // With delta = pi/2, V e1 = -e^{i(chi - Delta2)} e2, which equals e^{i beta} e2.
  Rng rng(15);
  for (int k = 0; k < 50; ++k) {
    const double chi = rng.uniform(-1.5, 1.5);
    const double beta = rng.uniform(-kPi, kPi);
    const CMatrix v = compose_su2({chi, rng.uniform(-3.0, 3.0), pspi_delta2(chi, beta), kHalfPi});
    EXPECT_LT(std::abs(v(1, 0) - cis(beta)), 1e-12);
  }
}

TEST(PspcTargets, Identity) {
  const auto t = pspc_targets(1.0, 0.0, 0.0);
  EXPECT_EQ(t.delta, 0.0);
  EXPECT_EQ(t.delta1, 0.0);
  EXPECT_EQ(t.delta2, 0.0);
}

TEST(PspcTargets, FullTransfer) {
  const auto t = pspc_targets(0.0, -1.0, 0.0);
  EXPECT_NEAR(t.delta, kHalfPi, 1e-15);
  EXPECT_NEAR(t.delta2, 0.0, 1e-15);
}

TEST(PspcTargets, ReadOff) {
  const auto t = pspc_targets(std::cos(0.7) * cis(0.5), -std::sin(0.7) * cis(-0.2), 0.0);
  EXPECT_NEAR(t.delta, 0.7, 1e-15);
  EXPECT_NEAR(t.delta1, 0.5, 1e-15);
  EXPECT_NEAR(t.delta2, 0.2, 1e-15);
}

TEST(PspcTargets, ReproducesTargetColumn) {
  // a = V11, b = V21 of the composed propagator.
  Rng rng(16);
  for (int k = 0; k < 50; ++k) {
    const CVector ab = rng.unit_vector(2);
    const double chi = rng.uniform(-1.5, 1.5);
    const auto t = pspc_targets(ab(0), ab(1), chi);
    const CMatrix v = compose_su2({chi, t.delta1, t.delta2, t.delta});
    EXPECT_LT((v.col(0) - ab).norm(), 1e-12);
  }
}

TEST(PspcTargets, NormViolation) {
  try {
    pspc_targets(1.0, 1.0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNormViolation);
  }
}

}  // namespace
}  // namespace floqinv

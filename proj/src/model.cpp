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

#include "floqinv/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "floqinv/error.hpp"

namespace floqinv {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kHermiticityViolation: return "HermiticityViolation";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kStepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::kNotUnitary: return "NotUnitary";
    case ErrorCode::kDegenerateEigenvectors: return "DegenerateEigenvectors";
    case ErrorCode::kNormViolation: return "NormViolation";
    case ErrorCode::kParallelVectors: return "ParallelVectors";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kNoCarrier: return "NoCarrier";
    case ErrorCode::kFrameMatchFailure: return "FrameMatchFailure";
    case ErrorCode::kBudgetExhausted: return "BudgetExhausted";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

namespace {

constexpr double kHermiticityTol = 1e-12;
constexpr double kNormTol = 1e-12;

}  // namespace

NLevelSystem::NLevelSystem(RVector energies, CMatrix dipole)
    : energies_(std::move(energies)), dipole_(std::move(dipole)) {
  const auto n = energies_.size();
  if (n < 2) {
    throw Error(ErrorCode::kDimensionMismatch,
                "system needs at least 2 levels, got " + std::to_string(n));
  }
  if (dipole_.rows() != n || dipole_.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dipole matrix is " + std::to_string(dipole_.rows()) + "x" +
                    std::to_string(dipole_.cols()) + ", expected " +
                    std::to_string(n) + "x" + std::to_string(n));
  }
  if (!energies_.allFinite() || !dipole_.allFinite()) {
    throw Error(ErrorCode::kDomainError, "system contains non-finite entries");
  }
  const double defect = hermiticity_error(dipole_);
  if (defect > kHermiticityTol) {
    throw Error(ErrorCode::kHermiticityViolation,
                "dipole matrix is not Hermitian (max defect " +
                    std::to_string(defect) + ")");
  }
}

CMatrix NLevelSystem::hamiltonian(double field) const {
  CMatrix h = -field * dipole_;
  h.diagonal() += energies_.cast<Complex>();
  return h;
}

NLevelSystem validate_system(int n_levels, const RVector& energies,
                             const CMatrix& dipole) {
  if (energies.size() != n_levels) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(n_levels) + " energies, got " +
                    std::to_string(energies.size()));
  }
  if (dipole.rows() != n_levels || dipole.cols() != n_levels) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dipole matrix does not match n_levels = " +
                    std::to_string(n_levels));
  }
  return NLevelSystem(energies, dipole);
}

std::string_view pulse_kind_name(PulseKind kind) {
  switch (kind) {
    case PulseKind::kRectangular: return "rectangular";
    case PulseKind::kGaussian: return "gaussian";
    case PulseKind::kSin2: return "sin2";
    case PulseKind::kSampled: return "sampled";
  }
  return "unknown";
}

PulseKind parse_pulse_kind(std::string_view name) {
  if (name == "rectangular") return PulseKind::kRectangular;
  if (name == "gaussian") return PulseKind::kGaussian;
  if (name == "sin2") return PulseKind::kSin2;
  if (name == "sampled") return PulseKind::kSampled;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown pulse kind '" + std::string(name) + "'");
}

PulseShape::PulseShape(PulseKind kind, double amplitude, double carrier,
                       double phase, double duration,
                       std::vector<double> samples)
    : kind_(kind),
      amplitude_(amplitude),
      carrier_(carrier),
      phase_(phase),
      duration_(duration),
      samples_(std::move(samples)) {
  check();
}

void PulseShape::check() const {
  if (!std::isfinite(amplitude_) || !std::isfinite(carrier_) ||
      !std::isfinite(phase_) || !std::isfinite(duration_)) {
    throw Error(ErrorCode::kInvalidArgument, "pulse parameters must be finite");
  }
  if (carrier_ < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "carrier frequency must be >= 0");
  }
  if (duration_ < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "pulse duration must be >= 0");
  }
  if (repeats_ < 1) {
    throw Error(ErrorCode::kInvalidArgument, "repeat count must be >= 1");
  }
  if (kind_ == PulseKind::kSampled) {
    if (samples_.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sampled pulse needs at least one sample");
    }
    for (double s : samples_) {
      if (!std::isfinite(s)) {
        throw Error(ErrorCode::kInvalidArgument, "pulse samples must be finite");
      }
    }
  }
}

PulseShape PulseShape::rectangular(double amplitude, double carrier,
                                   double phase, double duration) {
  return PulseShape(PulseKind::kRectangular, amplitude, carrier, phase,
                    duration, {});
}

PulseShape PulseShape::gaussian(double amplitude, double carrier, double phase,
                                double duration) {
  return PulseShape(PulseKind::kGaussian, amplitude, carrier, phase, duration,
                    {});
}

PulseShape PulseShape::sin2(double amplitude, double carrier, double phase,
                            double duration) {
  return PulseShape(PulseKind::kSin2, amplitude, carrier, phase, duration, {});
}

PulseShape PulseShape::sampled(double amplitude, double carrier, double phase,
                               double duration, std::vector<double> samples) {
  return PulseShape(PulseKind::kSampled, amplitude, carrier, phase, duration,
                    std::move(samples));
}

double PulseShape::envelope_at(double tau) const {
  if (tau < 0.0 || tau > duration_ || duration_ == 0.0) return 0.0;
  switch (kind_) {
    case PulseKind::kRectangular:
      return amplitude_;
    case PulseKind::kGaussian: {
      const double sigma = duration_ / 8.0;
      const double x = (tau - 0.5 * duration_) / sigma;
      return amplitude_ * std::exp(-0.5 * x * x);
    }
    case PulseKind::kSin2: {
      const double s = std::sin(kPi * tau / duration_);
      return amplitude_ * s * s;
    }
    case PulseKind::kSampled: {
      const auto n = samples_.size();
      const double spacing = duration_ / static_cast<double>(n + 1);
      const double pos = tau / spacing;
      auto k = static_cast<std::size_t>(std::floor(pos));
      if (k > n) k = n;
      const double frac = pos - static_cast<double>(k);
      const double left = k == 0 ? 0.0 : samples_[k - 1];
      const double right = k + 1 > n ? 0.0 : samples_[k];
      return amplitude_ * (left + frac * (right - left));
    }
  }
  return 0.0;
}

double PulseShape::eval(double t) const {
  const double end = support_end();
  if (!(t >= 0.0) || t > end || duration_ == 0.0) return 0.0;
  double tau = t;
  if (repeats_ > 1) {
    const double k = std::min(std::floor(t / duration_),
                              static_cast<double>(repeats_ - 1));
    tau = t - k * duration_;
  }
  return envelope_at(tau) * std::cos(carrier_ * tau + phase_);
}

std::vector<double> PulseShape::breakpoints() const {
  std::vector<double> out;
  for (int r = 0; r <= repeats_; ++r) out.push_back(r * duration_);
  if (kind_ == PulseKind::kSampled) {
    const auto n = samples_.size();
    const double spacing = duration_ / static_cast<double>(n + 1);
    for (int r = 0; r < repeats_; ++r) {
      for (std::size_t k = 1; k <= n; ++k) {
        out.push_back(r * duration_ + static_cast<double>(k) * spacing);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PulseShape PulseShape::with_amplitude(double v) const {
  PulseShape p = *this;
  p.amplitude_ = v;
  p.check();
  return p;
}

PulseShape PulseShape::with_carrier(double v) const {
  PulseShape p = *this;
  p.carrier_ = v;
  p.check();
  return p;
}

PulseShape PulseShape::with_phase(double v) const {
  PulseShape p = *this;
  p.phase_ = v;
  p.check();
  return p;
}

PulseShape PulseShape::with_duration(double v) const {
  PulseShape p = *this;
  p.duration_ = v;
  p.check();
  return p;
}

PulseShape PulseShape::with_sample(int index, double v) const {
  if (kind_ != PulseKind::kSampled || index < 0 ||
      index >= static_cast<int>(samples_.size())) {
    throw Error(ErrorCode::kInvalidArgument,
                "sample index " + std::to_string(index) + " out of range");
  }
  PulseShape p = *this;
  p.samples_[static_cast<std::size_t>(index)] = v;
  p.check();
  return p;
}

PulseShape PulseShape::repeated(int count) const {
  PulseShape p = *this;
  p.repeats_ = count;
  p.check();
  return p;
}

StateVector::StateVector(CVector amplitudes)
    : StateVector(std::move(amplitudes), kNormTol) {}

StateVector::StateVector(CVector amplitudes, double norm_tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "empty state vector");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (!(std::abs(norm2 - 1.0) <= norm_tol)) {
    throw Error(ErrorCode::kNormViolation,
                "state vector norm^2 = " + std::to_string(norm2) + ", expected 1");
  }
}

StateVector StateVector::normalized(const CVector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::kNormViolation, "cannot normalize a zero vector");
  }
  return StateVector(v / n, 1e-10);
}

StateVector StateVector::basis(int n, int index) {
  if (index < 0 || index >= n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "basis index " + std::to_string(index) + " out of range");
  }
  CVector v = CVector::Zero(n);
  v(index) = 1.0;
  return StateVector(v);
}

RVector StateVector::populations() const { return amplitudes_.cwiseAbs2(); }

}  // namespace floqinv

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

#include "floqinv/floqinv.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "floqinv/commands.hpp"
#include "floqinv/config.hpp"
#include "floqinv/error.hpp"
#include "floqinv/floquet.hpp"
#include "floqinv/model.hpp"
#include "floqinv/nlevel.hpp"
#include "floqinv/propagation.hpp"
#include "floqinv/su2.hpp"

struct floqinv_system {
  floqinv::NLevelSystem value;
};
struct floqinv_pulse {
  floqinv::PulseShape value;
};
struct floqinv_matrix {
  floqinv::CMatrix value;
};
struct floqinv_config {
  floqinv::RunConfig value;
};

namespace {

thread_local std::string g_last_error;

floqinv_status status_of(floqinv::ErrorCode code) {
  using floqinv::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return FLOQINV_ERR_INVALID_ARGUMENT;
    case ErrorCode::kConfig: return FLOQINV_ERR_CONFIG;
    case ErrorCode::kHermiticityViolation: return FLOQINV_ERR_HERMITICITY;
    case ErrorCode::kDimensionMismatch: return FLOQINV_ERR_DIMENSION;
    case ErrorCode::kStepLimitExceeded: return FLOQINV_ERR_STEP_LIMIT;
    case ErrorCode::kNotUnitary: return FLOQINV_ERR_NOT_UNITARY;
    case ErrorCode::kDegenerateEigenvectors: return FLOQINV_ERR_DEGENERATE;
    case ErrorCode::kNormViolation: return FLOQINV_ERR_NORM;
    case ErrorCode::kParallelVectors: return FLOQINV_ERR_PARALLEL;
    case ErrorCode::kDomainError: return FLOQINV_ERR_DOMAIN;
    case ErrorCode::kNoCarrier: return FLOQINV_ERR_NO_CARRIER;
    case ErrorCode::kFrameMatchFailure: return FLOQINV_ERR_FRAME_MATCH;
    case ErrorCode::kBudgetExhausted: return FLOQINV_ERR_BUDGET;
    case ErrorCode::kIo: return FLOQINV_ERR_IO;
  }
  return FLOQINV_ERR_INTERNAL;
}

floqinv_status fail(floqinv_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
floqinv_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return FLOQINV_OK;
  } catch (const floqinv::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FLOQINV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FLOQINV_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

floqinv::CVector read_vector(const double* data, int n) {
  floqinv::CVector v(n);
  for (int j = 0; j < n; ++j) v(j) = floqinv::Complex(data[2 * j], data[2 * j + 1]);
  return v;
}

floqinv::CMatrix read_matrix(const double* data, int n) {
  floqinv::CMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int k = r * n + c;
      m(r, c) = floqinv::Complex(data[2 * k], data[2 * k + 1]);
    }
  }
  return m;
}

floqinv::IntegratorConfig integrator(double tol) {
  floqinv::IntegratorConfig cfg;
  if (tol > 0.0) cfg.tol = tol;
  return cfg;
}

#define FLOQINV_REQUIRE(ptr)                                                    \
  do {                                                                          \
    if (!(ptr)) return fail(FLOQINV_ERR_INVALID_ARGUMENT, #ptr " is NULL");     \
  } while (0)

}  // namespace

extern "C" {

const char* floqinv_version(void) { return "0.1.0"; }

const char* floqinv_last_error(void) { return g_last_error.c_str(); }

const char* floqinv_status_name(floqinv_status status) {
  switch (status) {
    case FLOQINV_OK: return "ok";
    case FLOQINV_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case FLOQINV_ERR_CONFIG: return "config";
    case FLOQINV_ERR_HERMITICITY: return "hermiticity_violation";
    case FLOQINV_ERR_DIMENSION: return "dimension_mismatch";
    case FLOQINV_ERR_STEP_LIMIT: return "step_limit_exceeded";
    case FLOQINV_ERR_NOT_UNITARY: return "not_unitary";
    case FLOQINV_ERR_DEGENERATE: return "degenerate_eigenvectors";
    case FLOQINV_ERR_NORM: return "norm_violation";
    case FLOQINV_ERR_PARALLEL: return "parallel_vectors";
    case FLOQINV_ERR_DOMAIN: return "domain_error";
    case FLOQINV_ERR_NO_CARRIER: return "no_carrier";
    case FLOQINV_ERR_FRAME_MATCH: return "frame_match_failure";
    case FLOQINV_ERR_BUDGET: return "budget_exhausted";
    case FLOQINV_ERR_IO: return "io";
    case FLOQINV_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

int floqinv_exit_code(floqinv_status status) {
  switch (status) {
    case FLOQINV_OK: return 0;
    case FLOQINV_ERR_CONFIG:
    case FLOQINV_ERR_IO: return 2;
    case FLOQINV_ERR_BUDGET: return 4;
    default: return 3;
  }
}

void floqinv_string_free(char* s) { std::free(s); }

floqinv_status floqinv_system_new(int n, const double* energies,
                                  const double* dipole, floqinv_system** out) {
  FLOQINV_REQUIRE(energies);
  FLOQINV_REQUIRE(dipole);
  FLOQINV_REQUIRE(out);
  *out = nullptr;
  if (n < 1) return fail(FLOQINV_ERR_INVALID_ARGUMENT, "n must be positive");
  return guarded([&] {
    const floqinv::RVector e = Eigen::Map<const floqinv::RVector>(energies, n);
    *out = new floqinv_system{floqinv::validate_system(n, e, read_matrix(dipole, n))};
  });
}

void floqinv_system_free(floqinv_system* s) { delete s; }

int floqinv_system_levels(const floqinv_system* s) { return s ? s->value.levels() : 0; }

floqinv_status floqinv_pulse_new(const char* kind, double amplitude,
                                 double carrier, double phase, double duration,
                                 const double* samples, size_t n_samples,
                                 int repeats, floqinv_pulse** out) {
  FLOQINV_REQUIRE(kind);
  FLOQINV_REQUIRE(out);
  *out = nullptr;
  if (n_samples > 0 && !samples) {
    return fail(FLOQINV_ERR_INVALID_ARGUMENT, "samples is NULL");
  }
  return guarded([&] {
    using floqinv::PulseKind;
    using floqinv::PulseShape;
    PulseShape p = PulseShape::rectangular(amplitude, carrier, phase, duration);
    switch (floqinv::parse_pulse_kind(kind)) {
      case PulseKind::kRectangular: break;
      case PulseKind::kGaussian:
        p = PulseShape::gaussian(amplitude, carrier, phase, duration);
        break;
      case PulseKind::kSin2:
        p = PulseShape::sin2(amplitude, carrier, phase, duration);
        break;
      case PulseKind::kSampled:
        p = PulseShape::sampled(amplitude, carrier, phase, duration,
                                std::vector<double>(samples, samples + n_samples));
        break;
    }
    *out = new floqinv_pulse{p.repeated(repeats)};
  });
}

void floqinv_pulse_free(floqinv_pulse* p) { delete p; }

double floqinv_pulse_eval(const floqinv_pulse* p, double t) {
  return p ? p->value.eval(t) : 0.0;
}

floqinv_status floqinv_matrix_new(int n, const double* entries,
                                  floqinv_matrix** out) {
  FLOQINV_REQUIRE(entries);
  FLOQINV_REQUIRE(out);
  *out = nullptr;
  if (n < 1) return fail(FLOQINV_ERR_INVALID_ARGUMENT, "n must be positive");
  return guarded([&] { *out = new floqinv_matrix{read_matrix(entries, n)}; });
}

void floqinv_matrix_free(floqinv_matrix* m) { delete m; }

int floqinv_matrix_dim(const floqinv_matrix* m) {
  return m ? static_cast<int>(m->value.rows()) : 0;
}

floqinv_status floqinv_matrix_entries(const floqinv_matrix* m, double* out) {
  FLOQINV_REQUIRE(m);
  FLOQINV_REQUIRE(out);
  const auto n = m->value.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto k = r * n + c;
      out[2 * k] = m->value(r, c).real();
      out[2 * k + 1] = m->value(r, c).imag();
    }
  }
  return FLOQINV_OK;
}

floqinv_status floqinv_propagate(const floqinv_system* s, const floqinv_pulse* p,
                                 const double* psi0, double tol, double* psi_out) {
  FLOQINV_REQUIRE(s);
  FLOQINV_REQUIRE(p);
  FLOQINV_REQUIRE(psi0);
  FLOQINV_REQUIRE(psi_out);
  return guarded([&] {
    const int n = s->value.levels();
    const floqinv::StateVector psi(read_vector(psi0, n));
    const floqinv::StateVector end = floqinv::propagate_state(
        s->value, p->value, psi, 0.0, p->value.support_end(), integrator(tol));
    for (int j = 0; j < n; ++j) {
      psi_out[2 * j] = end[j].real();
      psi_out[2 * j + 1] = end[j].imag();
    }
  });
}

floqinv_status floqinv_monodromy(const floqinv_system* s, const floqinv_pulse* p,
                                 double tol, floqinv_matrix** out) {
  FLOQINV_REQUIRE(s);
  FLOQINV_REQUIRE(p);
  FLOQINV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new floqinv_matrix{
        floqinv::monodromy(s->value, p->value, integrator(tol)).matrix()};
  });
}

floqinv_status floqinv_floquet(const floqinv_matrix* v, double period,
                               double* omegas) {
  FLOQINV_REQUIRE(v);
  FLOQINV_REQUIRE(omegas);
  return guarded([&] {
    const floqinv::FloquetSpectrum spec = floqinv::floquet_spectrum(v->value, period);
    for (Eigen::Index j = 0; j < spec.quasienergies.size(); ++j) {
      omegas[j] = spec.quasienergies(j);
    }
  });
}

floqinv_status floqinv_su2_decompose(const floqinv_matrix* v, double params[4]) {
  FLOQINV_REQUIRE(v);
  FLOQINV_REQUIRE(params);
  return guarded([&] {
    const floqinv::Su2Params p = floqinv::decompose_su2(v->value);
    params[0] = p.chi;
    params[1] = p.delta1;
    params[2] = p.delta2;
    params[3] = p.delta;
  });
}

floqinv_status floqinv_su2_compose(const double params[4], floqinv_matrix** out) {
  FLOQINV_REQUIRE(params);
  FLOQINV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const floqinv::Su2Params p{params[0], params[1], params[2], params[3]};
    *out = new floqinv_matrix{floqinv::compose_su2(p)};
  });
}

floqinv_status floqinv_condition_count(int n, const char* scenario, int* out) {
  FLOQINV_REQUIRE(scenario);
  FLOQINV_REQUIRE(out);
  return guarded([&] {
    *out = floqinv::condition_count(n, floqinv::parse_scenario(scenario));
  });
}

floqinv_status floqinv_config_load(const char* path, floqinv_config** out) {
  FLOQINV_REQUIRE(path);
  FLOQINV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new floqinv_config{floqinv::load_config(path)}; });
}

floqinv_status floqinv_config_parse(const char* text, floqinv_config** out) {
  FLOQINV_REQUIRE(text);
  FLOQINV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new floqinv_config{floqinv::parse_config(text)}; });
}

void floqinv_config_free(floqinv_config* c) { delete c; }

floqinv_status floqinv_config_render(const floqinv_config* c, char** out) {
  FLOQINV_REQUIRE(c);
  FLOQINV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = dup_string(floqinv::render_config(c->value)); });
}

const char* floqinv_config_trajectory_path(const floqinv_config* c) {
  if (!c || !c->value.trajectory_path) return nullptr;
  return c->value.trajectory_path->c_str();
}

floqinv_status floqinv_run_command(const floqinv_config* c, const char* command,
                                   const floqinv_options* options, char** out,
                                   int* is_csv) {
  FLOQINV_REQUIRE(c);
  FLOQINV_REQUIRE(command);
  FLOQINV_REQUIRE(out);
  *out = nullptr;
  floqinv::CommandOptions opts;
  if (options) {
    opts.csv = options->csv != 0;
    if (options->tol > 0.0) opts.tol = options->tol;
    opts.threads = options->threads < 1 ? 1 : options->threads;
  }
  bool budget = false;
  const floqinv_status status = guarded([&] {
    const floqinv::CommandOutput result = floqinv::run_command(c->value, command, opts);
    *out = dup_string(result.body);
    if (is_csv) *is_csv = result.is_csv ? 1 : 0;
    budget = result.budget_exhausted;
  });
  if (status == FLOQINV_OK && budget) {
    return fail(FLOQINV_ERR_BUDGET, "evaluation budget exhausted before convergence");
  }
  return status;
}

}  // extern "C"

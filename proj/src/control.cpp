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

#include "floqinv/control.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include <Eigen/SVD>

#include "floqinv/format.hpp"
#include "floqinv/parallel.hpp"

namespace floqinv {

std::string_view target_mode_name(TargetMode mode) {
  switch (mode) {
    case TargetMode::kPI: return "PI";
    case TargetMode::kPSPI: return "PSPI";
    case TargetMode::kPC: return "PC";
    case TargetMode::kPSPC: return "PSPC";
  }
  return "unknown";
}

// Case-insensitive.
TargetMode parse_target_mode(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "PI") return TargetMode::kPI;
  if (upper == "PSPI") return TargetMode::kPSPI;
  if (upper == "PC") return TargetMode::kPC;
  if (upper == "PSPC") return TargetMode::kPSPC;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown target mode '" + std::string(name) + "'");
}

namespace {

std::optional<int> sample_index(std::string_view name) {
  constexpr std::string_view prefix = "sample";
  if (name.substr(0, prefix.size()) != prefix || name.size() == prefix.size()) {
    return std::nullopt;
  }
  int k = 0;
  for (char c : name.substr(prefix.size())) {
    if (c < '0' || c > '9') return std::nullopt;
    k = k * 10 + (c - '0');
  }
  return k - 1;
}

}  // namespace

PulseShape apply_parameter(const PulseShape& pulse, std::string_view name,
                           double value) {
  if (name == "amplitude") return pulse.with_amplitude(value);
  if (name == "carrier") return pulse.with_carrier(value);
  if (name == "phase") return pulse.with_phase(value);
  if (name == "duration") return pulse.with_duration(value);
  if (auto k = sample_index(name)) return pulse.with_sample(*k, value);
  throw Error(ErrorCode::kInvalidArgument,
              "unknown pulse parameter '" + std::string(name) + "'");
}

double read_parameter(const PulseShape& pulse, std::string_view name) {
  if (name == "amplitude") return pulse.amplitude();
  if (name == "carrier") return pulse.carrier();
  if (name == "phase") return pulse.phase();
  if (name == "duration") return pulse.duration();
  if (auto k = sample_index(name)) {
    if (*k >= 0 && *k < static_cast<int>(pulse.samples().size())) {
      return pulse.samples()[static_cast<std::size_t>(*k)];
    }
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown pulse parameter '" + std::string(name) + "'");
}

void ControlProblem::validate() const {
  if (free.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "control problem needs at least one free parameter");
  }
  for (const auto& p : free) {
    if (!std::isfinite(p.lower) || !std::isfinite(p.upper) || p.upper < p.lower) {
      throw Error(ErrorCode::kInvalidArgument,
                  "parameter '" + p.name + "' needs finite bounds lower <= upper");
    }
    read_parameter(family, p.name);
  }
  if (budget < 1) {
    throw Error(ErrorCode::kInvalidArgument, "evaluation budget must be >= 1");
  }
  const int n = system.levels();
  if (target.initial.size() != n || target.final.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "target vectors do not match the system dimension");
  }
  integrator.validate();
}

PulseShape ControlProblem::pulse_for(const std::vector<double>& params) const {
  if (params.size() != free.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "parameter vector does not match the free parameter list");
  }
  PulseShape pulse = family;
  for (std::size_t k = 0; k < free.size(); ++k) {
    pulse = apply_parameter(pulse, free[k].name, params[k]);
  }
  return pulse;
}

namespace {

double objective_for_pulse(const ControlProblem& problem,
                           const PulseShape& pulse) {
  const StateVector out =
      propagate_state(problem.system, pulse, problem.target.initial, 0.0,
                      pulse.support_end(), problem.integrator);
  const CVector& psi = out.amplitudes();
  const CVector& goal = problem.target.final.amplitudes();
  if (phase_selective(problem.target.mode)) {
    return (psi - std::exp(Complex(0.0, problem.target.beta)) * goal)
        .squaredNorm();
  }
  return (psi.cwiseAbs2() - goal.cwiseAbs2()).squaredNorm();
}

constexpr double kTargetValue = 1e-12;
constexpr double kDiameterTol = 1e-10;
constexpr double kInitialStep = 0.1;

struct SimplexRun {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  long evaluations = 0;
  bool converged = false;
  bool hit_target = false;
};

// Nelder-Mead on the unit cube [0, 1]^d; trial points are clamped into it.
SimplexRun nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                       const std::vector<double>& start, long budget) {
  const std::size_t d = start.size();
  SimplexRun run;
  std::vector<std::vector<double>> pts;
  std::vector<double> vals;

  auto clamp = [](std::vector<double> x) {
    for (double& v : x) v = std::clamp(v, 0.0, 1.0);
    return x;
  };
  auto eval = [&](const std::vector<double>& x) -> std::optional<double> {
    if (run.evaluations >= budget) return std::nullopt;
    ++run.evaluations;
    const double v = f(x);
    if (v < run.value) {
      run.value = v;
      run.x = x;
    }
    return v;
  };

  pts.push_back(clamp(start));
  for (std::size_t k = 0; k < d; ++k) {
    auto p = pts.front();
    p[k] += p[k] + kInitialStep <= 1.0 ? kInitialStep : -kInitialStep;
    pts.push_back(clamp(p));
  }
  for (const auto& p : pts) {
    auto v = eval(p);
    if (!v) return run;
    vals.push_back(*v);
  }

  std::vector<std::size_t> order(d + 1);
  while (true) {
    for (std::size_t k = 0; k <= d; ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    {
      std::vector<std::vector<double>> p2;
      std::vector<double> v2;
      for (auto k : order) {
        p2.push_back(pts[k]);
        v2.push_back(vals[k]);
      }
      pts = std::move(p2);
      vals = std::move(v2);
    }
    if (vals.front() < kTargetValue) {
      run.converged = run.hit_target = true;
      return run;
    }
    double diameter = 0.0;
    for (std::size_t k = 1; k <= d; ++k) {
      for (std::size_t j = 0; j < d; ++j) {
        diameter = std::max(diameter, std::abs(pts[k][j] - pts[0][j]));
      }
    }
    if (diameter < kDiameterTol) {
      run.converged = true;
      return run;
    }

    std::vector<double> centroid(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t j = 0; j < d; ++j) centroid[j] += pts[k][j] / static_cast<double>(d);
    }
    auto along = [&](double coef) {
      std::vector<double> x(d);
      for (std::size_t j = 0; j < d; ++j) {
        x[j] = centroid[j] + coef * (pts[d][j] - centroid[j]);
      }
      return clamp(x);
    };

    const auto xr = along(-1.0);
    auto fr = eval(xr);
    if (!fr) return run;
    if (*fr < vals[0]) {
      const auto xe = along(-2.0);
      auto fe = eval(xe);
      if (!fe) return run;
      if (*fe < *fr) {
        pts[d] = xe;
        vals[d] = *fe;
      } else {
        pts[d] = xr;
        vals[d] = *fr;
      }
      continue;
    }
    if (*fr < vals[d - 1]) {
      pts[d] = xr;
      vals[d] = *fr;
      continue;
    }
    const bool outside = *fr < vals[d];
    const auto xc = along(outside ? -0.5 : 0.5);
    auto fc = eval(xc);
    if (!fc) return run;
    if (*fc < std::min(*fr, vals[d])) {
      pts[d] = xc;
      vals[d] = *fc;
      continue;
    }
    for (std::size_t k = 1; k <= d; ++k) {
      for (std::size_t j = 0; j < d; ++j) {
        pts[k][j] = pts[0][j] + 0.5 * (pts[k][j] - pts[0][j]);
      }
      auto v = eval(pts[k]);
      if (!v) return run;
      vals[k] = *v;
    }
  }
}

double radical_inverse(unsigned index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

constexpr std::array<unsigned, 16> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19,
                                              23, 29, 31, 37, 41, 43, 47, 53};

double halton(unsigned index, std::size_t dim) {
  const unsigned base = dim < kPrimes.size()
                            ? kPrimes[dim]
                            : kPrimes.back() + 2 * static_cast<unsigned>(dim);
  return radical_inverse(index, base);
}

std::vector<double> to_physical(const ControlProblem& problem,
                                const std::vector<double>& unit) {
  std::vector<double> x(unit.size());
  for (std::size_t k = 0; k < unit.size(); ++k) {
    const auto& p = problem.free[k];
    x[k] = p.lower + unit[k] * (p.upper - p.lower);
  }
  return x;
}

CMatrix polar_unitary(const CMatrix& block) {
  Eigen::JacobiSVD<CMatrix> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

double objective(const ControlProblem& problem, const std::vector<double>& params) {
  return objective_for_pulse(problem, problem.pulse_for(params));
}

BudgetExhausted::BudgetExhausted(OptimizeResult best)
    : Error(ErrorCode::kBudgetExhausted,
            "evaluation budget exhausted; best objective " +
                fmt_real(best.best_value)),
      best_(std::move(best)) {}

OptimizeResult evaluate_point(const ControlProblem& problem,
                              const std::vector<double>& params) {
  PulseShape pulse = problem.pulse_for(params);
  PropagatorMatrix v = monodromy(problem.system, pulse, problem.integrator);
  ClassifyOptions opts;
  opts.tol = problem.report_tol;
  if (phase_selective(problem.target.mode)) opts.locked_phase = problem.target.beta;
  TransferReport report =
      classify_transfer(v, problem.target.initial, problem.target.final, opts);

  std::optional<SufficientPiCheck> sufficient;
  try {
    CMatrix pair;
    if (v.dim() == 2) {
      pair = v.matrix();
    } else {
      const CMatrix r = build_rotation(problem.target.initial, problem.target.final);
      pair = polar_unitary((r * v.matrix() * r.adjoint()).topLeftCorner(2, 2));
    }
    sufficient = sufficient_pi_check(eigensystem_2ls(pair), problem.report_tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateEigenvectors &&
        e.code() != ErrorCode::kParallelVectors) {
      throw;
    }
  }
  const double value = objective_for_pulse(problem, pulse);
  return OptimizeResult{params,           value,           0,
                        0,                false,           std::move(pulse),
                        std::move(v),     std::move(report), std::move(sufficient)};
}

OptimizeResult optimize(const ControlProblem& problem) {
  problem.validate();
  const std::size_t d = problem.free.size();
  const std::size_t restarts = 2 * d + 1;
  const long share = problem.budget / static_cast<long>(restarts);
  const long extra = problem.budget % static_cast<long>(restarts);

  auto f = [&](const std::vector<double>& unit) {
    return objective(problem, to_physical(problem, unit));
  };

  std::vector<SimplexRun> runs(restarts);
  const std::size_t wave = static_cast<std::size_t>(std::max(1, problem.threads));
  std::size_t done = 0;
  std::optional<std::size_t> first_hit;
  while (done < restarts && !first_hit) {
    const std::size_t count = std::min(wave, restarts - done);
    parallel_for(count, problem.threads, [&](std::size_t k) {
      const std::size_t r = done + k;
      std::vector<double> start(d);
      for (std::size_t j = 0; j < d; ++j) {
        start[j] = halton(static_cast<unsigned>(r + 1), j);
      }
      const long budget = share + (static_cast<long>(r) < extra ? 1 : 0);
      runs[r] = nelder_mead(f, start, budget);
    });
    for (std::size_t k = done; k < done + count; ++k) {
      if (runs[k].hit_target) {
        first_hit = k;
        break;
      }
    }
    done += count;
  }

  const std::size_t examined = first_hit ? *first_hit + 1 : restarts;
  std::size_t best = 0;
  long evaluations = 0;
  bool any_converged = false;
  for (std::size_t k = 0; k < examined; ++k) {
    evaluations += runs[k].evaluations;
    any_converged = any_converged || runs[k].converged;
    if (runs[k].value < runs[best].value) best = k;
  }
  if (first_hit) best = *first_hit;

  const auto& chosen = runs[best];
  std::vector<double> x = chosen.x.empty()
                              ? to_physical(problem, std::vector<double>(d, 0.5))
                              : to_physical(problem, chosen.x);
  OptimizeResult result = evaluate_point(problem, x);
  result.evaluations = evaluations;
  result.restarts_run = static_cast<int>(examined);
  result.converged = chosen.converged;
  if (!first_hit && !any_converged) throw BudgetExhausted(std::move(result));
  return result;
}

double ScanAxis::value(int k) const {
  if (points <= 1) return lower;
  return lower + (upper - lower) * static_cast<double>(k) /
                     static_cast<double>(points - 1);
}

ScanTable scan(const ControlProblem& problem, const std::vector<ScanAxis>& grid) {
  const int n = problem.system.levels();
  ScanTable table;
  std::size_t total = 1;
  for (const auto& axis : grid) {
    if (axis.points < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "scan axis '" + axis.name + "' needs at least one point");
    }
    read_parameter(problem.family, axis.name);
    table.header.push_back(axis.name);
    total *= static_cast<std::size_t>(axis.points);
  }
  for (int j = 1; j <= n; ++j) table.header.push_back("pop" + std::to_string(j));
  for (const char* col : {"objective", "delta", "spacing_residual",
                          "sufficient", "block_residual"}) {
    table.header.push_back(col);
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  table.rows.resize(total);
  parallel_for(total, problem.threads, [&](std::size_t row) {
    std::vector<double> values(grid.size());
    PulseShape pulse = problem.family;
    std::size_t rest = row;
    for (std::size_t a = grid.size(); a-- > 0;) {
      const auto pts = static_cast<std::size_t>(grid[a].points);
      values[a] = grid[a].value(static_cast<int>(rest % pts));
      rest /= pts;
    }
    for (std::size_t a = 0; a < grid.size(); ++a) {
      pulse = apply_parameter(pulse, grid[a].name, values[a]);
    }
    ControlProblem fixed = problem;
    fixed.family = pulse;
    fixed.free.clear();
    const OptimizeResult point = evaluate_point(fixed, {});

    std::vector<double> out = values;
    for (int j = 0; j < n; ++j) out.push_back(point.report.populations_final(j));
    out.push_back(point.best_value);
    out.push_back(n == 2 ? decompose_su2(point.propagator.matrix()).delta : nan);
    out.push_back(point.report.criterion ? point.report.criterion->residual : nan);
    out.push_back(point.sufficient
                      ? (point.sufficient->is_pi_rotation ? 1.0 : 0.0)
                      : nan);
    out.push_back(n > 2 && point.report.block_residual ? *point.report.block_residual
                                                       : nan);
    table.rows[row] = std::move(out);
  });
  return table;
}

void write_scan_csv(std::ostream& out, const ScanTable& table) {
  for (std::size_t k = 0; k < table.header.size(); ++k) {
    out << (k ? "," : "") << table.header[k];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      out << (k ? "," : "") << (std::isnan(row[k]) ? "nan" : fmt_real(row[k]));
    }
    out << '\n';
  }
}

}  // namespace floqinv

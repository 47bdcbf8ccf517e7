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

#include "floqinv/commands.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "floqinv/adiabatic.hpp"
#include "floqinv/control.hpp"
#include "floqinv/error.hpp"
#include "floqinv/floquet.hpp"
#include "floqinv/format.hpp"
#include "floqinv/nlevel.hpp"
#include "floqinv/propagation.hpp"
#include "floqinv/su2.hpp"

namespace floqinv {

namespace {

constexpr double kDefaultTol = 1e-6;

// Ordered key/value pairs; rendered either as "key = value" lines or as a
// two-row CSV.
class Record {
 public:
  void add(std::string key, std::string value) {
    keys_.push_back(std::move(key));
    values_.push_back(std::move(value));
  }
  void add(std::string key, double v) { add(std::move(key), fmt_real(v)); }
  void add_int(std::string key, long v) { add(std::move(key), std::to_string(v)); }
  void add_bool(std::string key, bool v) { add(std::move(key), v ? "true" : "false"); }

  void text(std::ostream& out) const {
    for (std::size_t k = 0; k < keys_.size(); ++k) {
      out << keys_[k] << " = " << values_[k] << '\n';
    }
  }
  void csv(std::ostream& out) const {
    for (std::size_t k = 0; k < keys_.size(); ++k) out << (k ? "," : "") << keys_[k];
    out << '\n';
    for (std::size_t k = 0; k < values_.size(); ++k) out << (k ? "," : "") << values_[k];
    out << '\n';
  }

 private:
  std::vector<std::string> keys_;
  std::vector<std::string> values_;
};

CommandOutput finish(const RunConfig& cfg, const CommandOptions& opts,
                     const std::string& section, const Record& rec) {
  std::ostringstream out;
  if (opts.csv) {
    rec.csv(out);
  } else {
    out << render_config(cfg) << "\n[" << section << "]\n";
    rec.text(out);
  }
  return {out.str(), opts.csv, false};
}

double tol_of(const CommandOptions& opts) { return opts.tol.value_or(kDefaultTol); }

void add_populations(Record& rec, const RVector& pops) {
  for (Eigen::Index j = 0; j < pops.size(); ++j) {
    rec.add("pop" + std::to_string(j + 1), pops(j));
  }
}

void add_report(Record& rec, const TransferReport& r) {
  add_populations(rec, r.populations_final);
  rec.add("fidelity", r.fidelity);
  rec.add_bool("orthogonal", r.orthogonal);
  rec.add("population_residual", r.population_residual);
  rec.add("phase_residual", r.phase_residual);
  rec.add("phase", r.phase);
  rec.add_bool("pi", r.pi());
  rec.add_bool("pspi", r.pspi());
  rec.add_bool("pc", r.pc());
  rec.add_bool("pspc", r.pspc());
  if (r.criterion) {
    rec.add_bool("criterion_satisfied", r.criterion->satisfied);
    rec.add_int("criterion_n", r.criterion->n);
    rec.add("criterion_residual", r.criterion->residual);
    rec.add("phase_spacing", r.criterion->phase_spacing);
  } else {
    rec.add("criterion_satisfied", "nan");
    rec.add("criterion_n", "nan");
    rec.add("criterion_residual", "nan");
    rec.add("phase_spacing", "nan");
  }
  rec.add("block_residual", r.block_residual ? fmt_real(*r.block_residual) : "nan");
}

ClassifyOptions classify_options(const RunConfig& cfg, const CommandOptions& opts) {
  ClassifyOptions c;
  c.tol = tol_of(opts);
  if (cfg.phase_locked) c.locked_phase = cfg.beta;
  return c;
}

CommandOutput cmd_propagate(const RunConfig& cfg, const CommandOptions&) {
  std::ostringstream out;
  write_trajectory_csv(out, cfg.system, cfg.pulse, cfg.initial, cfg.integrator);
  return {out.str(), true, false};
}

CommandOutput cmd_floquet(const RunConfig& cfg, const CommandOptions& opts) {
  const PropagatorMatrix v = monodromy(cfg.system, cfg.pulse, cfg.integrator);
  const FloquetSpectrum spec = floquet_spectrum(v.matrix(), v.duration());
  const RVector q = spec.reduced();
  if (opts.csv) {
    std::ostringstream out;
    out << "level,omega,q\n";
    for (Eigen::Index j = 0; j < q.size(); ++j) {
      out << j + 1 << ',' << fmt_real(spec.quasienergies(j)) << ',' << fmt_real(q(j))
          << '\n';
    }
    return {out.str(), true, false};
  }
  Record rec;
  rec.add("period", spec.period);
  rec.add("zone_width", spec.zone_width());
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    rec.add("omega" + std::to_string(j + 1), spec.quasienergies(j));
    rec.add("q" + std::to_string(j + 1), q(j));
  }
  const InversionCriterion crit =
      inversion_criterion(spec, cfg.level_i, cfg.level_f, tol_of(opts));
  rec.add("phase_spacing", crit.phase_spacing);
  rec.add_int("criterion_n", crit.n);
  rec.add("criterion_residual", crit.residual);
  rec.add_bool("criterion_satisfied", crit.satisfied);
  return finish(cfg, opts, "floquet", rec);
}

CommandOutput cmd_analyze(const RunConfig& cfg, const CommandOptions& opts) {
  if (cfg.system.levels() != 2) {
    throw Error(ErrorCode::kConfig, "system.levels: analyze needs a two-level system");
  }
  const double tol = tol_of(opts);
  const PropagatorMatrix v = monodromy(cfg.system, cfg.pulse, cfg.integrator);
  const Su2Params p = decompose_su2(v.matrix());
  const PiAngleCheck angle = pi_angle_check(p.delta, tol);
  const Eigensystem2 eig = eigensystem_2ls(v.matrix());
  Record rec;
  rec.add("unitarity_error", unitarity_error(v.matrix()));
  rec.add("chi", p.chi);
  rec.add("chi_wronskian", global_phase_chi(cfg.system, cfg.pulse, cfg.integrator));
  rec.add("delta1", p.delta1);
  rec.add("delta2", p.delta2);
  rec.add("delta", p.delta);
  rec.add_bool("delta_is_pi", angle.is_pi);
  rec.add_int("delta_k", angle.k);
  rec.add("delta_residual", angle.residual);
  rec.add("zeta1_re", eig.zeta1.real());
  rec.add("zeta1_im", eig.zeta1.imag());
  rec.add("zeta2_re", eig.zeta2.real());
  rec.add("zeta2_im", eig.zeta2.imag());
  try {
    const SufficientPiCheck s = sufficient_pi_check(eig, tol);
    rec.add_bool("sufficient", s.is_pi_rotation);
    rec.add("sufficient_residual", s.residual);
    rec.add("alpha", s.alpha ? fmt_real(*s.alpha) : "nan");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateEigenvectors) throw;
    rec.add("sufficient", "degenerate");
    rec.add("sufficient_residual", "nan");
    rec.add("alpha", "nan");
  }
  return finish(cfg, opts, "analyze", rec);
}

CommandOutput cmd_classify(const RunConfig& cfg, const CommandOptions& opts) {
  const PropagatorMatrix v = monodromy(cfg.system, cfg.pulse, cfg.integrator);
  const TransferReport r =
      classify_transfer(v, cfg.initial, cfg.final, classify_options(cfg, opts));
  Record rec;
  add_report(rec, r);
  return finish(cfg, opts, "classify", rec);
}

CommandOutput cmd_adiabatic(const RunConfig& cfg, const CommandOptions& opts) {
  const AdiabaticTrack track =
      track_periods(cfg.system, cfg.pulse, cfg.integrator, opts.threads);
  const AdiabaticCriterion crit = adiabatic_criterion(track, cfg.level_i, cfg.level_f);
  const int n = cfg.system.levels();

  std::ostringstream table;
  table << "p,d_p,envelope";
  for (int j = 1; j <= n; ++j) table << ",omega" << j;
  table << ",spacing\n";
  for (int p = 0; p < track.decomp.periods(); ++p) {
    const auto& s = track.spectra[static_cast<std::size_t>(p)];
    table << p + 1 << ',' << fmt_real(track.decomp.length(p)) << ','
          << fmt_real(track.decomp.frozen_envelope[static_cast<std::size_t>(p)]);
    for (int j = 0; j < n; ++j) table << ',' << fmt_real(s.quasienergies(j));
    table << ',' << fmt_real(crit.spacings[static_cast<std::size_t>(p)]) << '\n';
  }
  if (opts.csv) return {table.str(), true, false};

  const CMatrix adiabatic = adiabatic_propagator(track).matrix();
  const CMatrix product = frozen_product_propagator(track).matrix();
  const CMatrix exact =
      propagator_over(cfg.system, cfg.pulse, 0.0, cfg.pulse.support_end(), cfg.integrator)
          .matrix();
  Record rec;
  rec.add_int("periods", track.decomp.periods());
  rec.add("integral", crit.integral);
  rec.add_int("nearest_odd_pi", crit.nearest_odd_pi);
  rec.add("residual", crit.residual);
  rec.add_bool("satisfied", crit.residual <= tol_of(opts));
  rec.add("min_frame_overlap", track.min_frame_overlap);
  rec.add("product_formula_error", max_abs(adiabatic - product));
  rec.add("exact_error", max_abs(adiabatic - exact));
  CommandOutput out = finish(cfg, opts, "adiabatic", rec);
  out.body += "\n[periods]\n" + table.str();
  return out;
}

CommandOutput cmd_optimize(const RunConfig& cfg, const CommandOptions& opts) {
  if (cfg.free.empty()) {
    throw Error(ErrorCode::kConfig, "control.free: optimize needs free parameters");
  }
  const ControlProblem problem = cfg.control_problem(tol_of(opts), opts.threads);
  bool exhausted = false;
  OptimizeResult result = [&] {
    try {
      return optimize(problem);
    } catch (const BudgetExhausted& e) {
      exhausted = true;
      return e.best();
    }
  }();

  Record rec;
  rec.add_bool("budget_exhausted", exhausted);
  rec.add_int("evaluations", result.evaluations);
  rec.add_int("restarts", result.restarts_run);
  rec.add_bool("converged", result.converged);
  rec.add("objective", result.best_value);
  for (std::size_t k = 0; k < cfg.free.size(); ++k) {
    rec.add(cfg.free[k].name, result.best_params[k]);
  }
  add_report(rec, result.report);
  if (result.sufficient) {
    rec.add_bool("sufficient", result.sufficient->is_pi_rotation);
    rec.add("sufficient_residual", result.sufficient->residual);
    rec.add("alpha", result.sufficient->alpha ? fmt_real(*result.sufficient->alpha) : "nan");
  } else {
    rec.add("sufficient", "nan");
    rec.add("sufficient_residual", "nan");
    rec.add("alpha", "nan");
  }
  CommandOutput out = finish(cfg, opts, "optimize", rec);
  if (!opts.csv) out.body += "\n; winning pulse\n" + render_pulse(result.best_pulse);
  out.budget_exhausted = exhausted;
  return out;
}

CommandOutput cmd_scan(const RunConfig& cfg, const CommandOptions& opts) {
  if (cfg.scan.empty()) {
    throw Error(ErrorCode::kConfig, "scan: no scan axes configured");
  }
  const ScanTable table = scan(cfg.control_problem(tol_of(opts), opts.threads), cfg.scan);
  std::ostringstream out;
  write_scan_csv(out, table);
  return {out.str(), true, false};
}

}  // namespace

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names = {
      "propagate", "floquet", "analyze", "classify", "adiabatic", "optimize", "scan"};
  return names;
}

CommandOutput run_command(const RunConfig& cfg, std::string_view name,
                          const CommandOptions& opts) {
  if (opts.tol && !(*opts.tol > 0.0)) {
    throw Error(ErrorCode::kConfig, "tol: must be > 0");
  }
  if (opts.threads < 1) throw Error(ErrorCode::kConfig, "threads: must be >= 1");
  if (name == "propagate") return cmd_propagate(cfg, opts);
  if (name == "floquet") return cmd_floquet(cfg, opts);
  if (name == "analyze") return cmd_analyze(cfg, opts);
  if (name == "classify") return cmd_classify(cfg, opts);
  if (name == "adiabatic") return cmd_adiabatic(cfg, opts);
  if (name == "optimize") return cmd_optimize(cfg, opts);
  if (name == "scan") return cmd_scan(cfg, opts);
  throw Error(ErrorCode::kInvalidArgument, "unknown command '" + std::string(name) + "'");
}

}  // namespace floqinv

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

#include "floqinv/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "floqinv/error.hpp"
#include "floqinv/format.hpp"

namespace floqinv {

namespace {

namespace pt = boost::property_tree;

[[noreturn]] void fail(const std::string& key, const std::string& message) {
  throw Error(ErrorCode::kConfig, key + ": " + message);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',' || c == '\r' || c == '\n') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

double real_value(const std::string& key, std::string_view text) {
  const auto t = trim(text);
  auto v = to_double(t);
  if (!v) fail(key, "expected a number, got '" + t + "'");
  return *v;
}

long integer_value(const std::string& key, std::string_view text) {
  const double v = real_value(key, text);
  if (v != std::floor(v) || std::abs(v) > 9e15) fail(key, "expected an integer");
  return static_cast<long>(v);
}

bool bool_value(const std::string& key, std::string_view text) {
  const auto t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  fail(key, "expected true or false, got '" + t + "'");
}

std::vector<double> real_list(const std::string& key, std::string_view text) {
  std::vector<double> out;
  for (const auto& tok : tokens(text)) out.push_back(real_value(key, tok));
  return out;
}

// Accepts a, bi, a+bi, a-bi, i, -i.
std::optional<Complex> to_complex(std::string_view s) {
  if (s.empty()) return std::nullopt;
  const char last = s.back();
  if (last != 'i' && last != 'j') {
    auto re = to_double(s);
    if (!re) return std::nullopt;
    return Complex(*re, 0.0);
  }
  s.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](std::string_view part) -> std::optional<double> {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return to_double(part);
  };
  if (split == std::string_view::npos) {
    auto im = imag_of(s);
    if (!im) return std::nullopt;
    return Complex(0.0, *im);
  }
  auto re = to_double(s.substr(0, split));
  auto im = imag_of(s.substr(split));
  if (!re || !im) return std::nullopt;
  return Complex(*re, *im);
}

CVector complex_list(const std::string& key, std::string_view text) {
  const auto toks = tokens(text);
  CVector out(static_cast<Eigen::Index>(toks.size()));
  for (std::size_t k = 0; k < toks.size(); ++k) {
    auto z = to_complex(toks[k]);
    if (!z) fail(key, "expected a complex number, got '" + toks[k] + "'");
    out(static_cast<Eigen::Index>(k)) = *z;
  }
  return out;
}

CMatrix complex_matrix(const std::string& key, std::string_view text, int n) {
  std::vector<CVector> rows;
  std::string_view rest = text;
  while (true) {
    const auto pos = rest.find(';');
    rows.push_back(complex_list(key, rest.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  if (static_cast<int>(rows.size()) != n) {
    fail(key, "expected " + std::to_string(n) + " rows, got " +
                  std::to_string(rows.size()));
  }
  CMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    if (rows[static_cast<std::size_t>(r)].size() != n) {
      fail(key, "row " + std::to_string(r + 1) + " has " +
                    std::to_string(rows[static_cast<std::size_t>(r)].size()) +
                    " entries, expected " + std::to_string(n));
    }
    m.row(r) = rows[static_cast<std::size_t>(r)].transpose();
  }
  return m;
}

std::string fmt_complex(Complex z) {
  if (z.imag() == 0.0) return fmt_real(z.real());
  std::string im = fmt_real(z.imag());
  if (im.front() != '-') im = "+" + im;
  return fmt_real(z.real()) + im + "i";
}

std::string fmt_vector(const CVector& v) {
  std::string out;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out += (k ? " " : "") + fmt_complex(v(k));
  }
  return out;
}

// Section view that records which keys were consumed.
class Section {
 public:
  Section(const pt::ptree* tree, std::string name)
      : tree_(tree), name_(std::move(name)) {}

  bool present() const { return tree_ != nullptr; }
  std::string key(const std::string& k) const { return name_ + "." + k; }

  std::optional<std::string> get(const std::string& k) {
    used_.insert(k);
    if (!tree_) return std::nullopt;
    auto it = tree_->find(k);
    if (it == tree_->not_found()) return std::nullopt;
    return it->second.data();
  }
  std::string require(const std::string& k) {
    auto v = get(k);
    if (!v) fail(key(k), "missing required key");
    return *v;
  }

  std::vector<std::pair<std::string, std::string>> entries() const {
    std::vector<std::pair<std::string, std::string>> out;
    if (!tree_) return out;
    for (const auto& [k, v] : *tree_) out.emplace_back(k, v.data());
    return out;
  }

  void check_unused() const {
    if (!tree_) return;
    for (const auto& [k, v] : *tree_) {
      if (!used_.count(k)) fail(key(k), "unknown key");
    }
  }

 private:
  const pt::ptree* tree_;
  std::string name_;
  std::set<std::string> used_;
};

Section section(const pt::ptree& root, const std::string& name) {
  auto it = root.find(name);
  return Section(it == root.not_found() ? nullptr : &it->second, name);
}

template <typename Fn>
auto rethrow_as_config(const std::string& key, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    fail(key, e.what());
  }
}

}  // namespace

ControlProblem RunConfig::control_problem(double report_tol, int threads) const {
  return ControlProblem{system,   pulse,      free,
                        ControlTarget{initial, final, mode, beta},
                        budget,   integrator, report_tol,
                        threads};
}

RunConfig parse_config(std::string_view text) {
  pt::ptree root;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::kConfig, "line " + std::to_string(e.line()) + ": " +
                                        e.message());
  }
  static const std::set<std::string> known = {
      "system", "pulse", "integrator", "targets", "control",
      "bounds", "scan",  "output"};
  static const std::map<std::string, std::set<std::string>> fixed_keys = {
      {"system", {"levels", "energies", "dipole"}},
      {"pulse", {"kind", "amplitude", "carrier", "phase", "duration", "samples", "repeats"}},
      {"integrator", {"tol", "step_init", "max_steps", "max_step"}},
      {"targets", {"i", "f", "initial", "final", "beta", "phase_locked"}},
      {"control", {"mode", "free", "budget"}},
      {"output", {"trajectory"}},
  };
  for (const auto& [name, sub] : root) {
    if (!known.count(name)) fail(name, "unknown section");
    if (sub.data().size() && sub.empty()) fail(name, "key outside a section");
    auto allowed = fixed_keys.find(name);
    if (allowed == fixed_keys.end()) continue;
    for (const auto& [k, v] : sub) {
      if (!allowed->second.count(k)) fail(name + "." + k, "unknown key");
    }
  }

  // [system]
  Section sys = section(root, "system");
  if (!sys.present()) fail("system", "missing required section");
  const long levels = integer_value(sys.key("levels"), sys.require("levels"));
  if (levels < 2) fail(sys.key("levels"), "need at least 2 levels");
  const int n = static_cast<int>(levels);
  const auto energies_raw = real_list(sys.key("energies"), sys.require("energies"));
  RVector energies = Eigen::Map<const RVector>(
      energies_raw.data(), static_cast<Eigen::Index>(energies_raw.size()));
  if (energies.size() != n) {
    fail(sys.key("energies"), "expected " + std::to_string(n) + " values, got " +
                                  std::to_string(energies.size()));
  }
  const CMatrix dipole = complex_matrix(sys.key("dipole"), sys.require("dipole"), n);
  NLevelSystem system = rethrow_as_config(
      sys.key("dipole"), [&] { return validate_system(n, energies, dipole); });
  sys.check_unused();

  // [pulse]
  Section pul = section(root, "pulse");
  if (!pul.present()) fail("pulse", "missing required section");
  const std::string kind_name = trim(pul.require("kind"));
  const PulseKind kind = rethrow_as_config(
      pul.key("kind"), [&] { return parse_pulse_kind(kind_name); });
  auto pulse_real = [&](const std::string& k, double fallback) {
    auto v = pul.get(k);
    return v ? real_value(pul.key(k), *v) : fallback;
  };
  const double amplitude = real_value(pul.key("amplitude"), pul.require("amplitude"));
  const double duration = real_value(pul.key("duration"), pul.require("duration"));
  const double carrier = pulse_real("carrier", 0.0);
  const double phase = pulse_real("phase", 0.0);
  const long repeats =
      pul.get("repeats") ? integer_value(pul.key("repeats"), *pul.get("repeats")) : 1;
  std::vector<double> samples;
  if (kind == PulseKind::kSampled) {
    samples = real_list(pul.key("samples"), pul.require("samples"));
  } else if (pul.get("samples")) {
    fail(pul.key("samples"), "only valid for kind = sampled");
  }
  PulseShape pulse = rethrow_as_config("pulse", [&] {
    PulseShape p = PulseShape::rectangular(amplitude, carrier, phase, duration);
    switch (kind) {
      case PulseKind::kRectangular: break;
      case PulseKind::kGaussian:
        p = PulseShape::gaussian(amplitude, carrier, phase, duration);
        break;
      case PulseKind::kSin2:
        p = PulseShape::sin2(amplitude, carrier, phase, duration);
        break;
      case PulseKind::kSampled:
        p = PulseShape::sampled(amplitude, carrier, phase, duration, samples);
        break;
    }
    return p.repeated(static_cast<int>(repeats));
  });
  pul.check_unused();

  // [integrator]
  Section integ = section(root, "integrator");
  IntegratorConfig ic;
  if (auto v = integ.get("tol")) ic.tol = real_value(integ.key("tol"), *v);
  if (auto v = integ.get("step_init")) ic.step_init = real_value(integ.key("step_init"), *v);
  if (auto v = integ.get("max_steps")) ic.max_steps = integer_value(integ.key("max_steps"), *v);
  if (auto v = integ.get("max_step")) ic.max_step = real_value(integ.key("max_step"), *v);
  rethrow_as_config("integrator", [&] { ic.validate(); });
  integ.check_unused();

  // [targets]
  Section tgt = section(root, "targets");
  auto level_index = [&](const std::string& k, int fallback) {
    auto v = tgt.get(k);
    if (!v) return fallback;
    const long idx = integer_value(tgt.key(k), *v);
    if (idx < 1 || idx > n) fail(tgt.key(k), "level index out of range 1.." + std::to_string(n));
    return static_cast<int>(idx - 1);
  };
  const int level_i = level_index("i", 0);
  const int level_f = level_index("f", 1);
  if (level_i == level_f) fail(tgt.key("f"), "must differ from targets.i");
  auto state = [&](const std::string& k, int fallback_level) {
    auto v = tgt.get(k);
    if (!v) return StateVector::basis(n, fallback_level);
    const CVector amps = complex_list(tgt.key(k), *v);
    if (amps.size() != n) {
      fail(tgt.key(k), "expected " + std::to_string(n) + " amplitudes");
    }
    return rethrow_as_config(tgt.key(k), [&] { return StateVector::normalized(amps); });
  };
  StateVector initial = state("initial", level_i);
  StateVector final = state("final", level_f);
  const double beta = tgt.get("beta") ? real_value(tgt.key("beta"), *tgt.get("beta")) : 0.0;
  const bool locked = tgt.get("phase_locked")
                          ? bool_value(tgt.key("phase_locked"), *tgt.get("phase_locked"))
                          : false;
  tgt.check_unused();

  RunConfig cfg{std::move(system), std::move(pulse), ic,
                level_i,           level_f,          std::move(initial),
                std::move(final),  beta,             locked,
                TargetMode::kPI,   {},               2000,
                {},                std::nullopt};

  // [control] + [bounds]
  Section ctl = section(root, "control");
  Section bounds = section(root, "bounds");
  if (auto v = ctl.get("mode")) {
    const auto name = trim(*v);
    cfg.mode = rethrow_as_config(ctl.key("mode"), [&] { return parse_target_mode(name); });
  }
  if (auto v = ctl.get("budget")) {
    cfg.budget = integer_value(ctl.key("budget"), *v);
    if (cfg.budget < 1) fail(ctl.key("budget"), "must be >= 1");
  }
  if (auto v = ctl.get("free")) {
    for (const auto& name : tokens(*v)) {
      rethrow_as_config(ctl.key("free"), [&] { read_parameter(cfg.pulse, name); });
      auto b = bounds.get(name);
      if (!b) fail(bounds.key(name), "missing bounds for free parameter");
      const auto lim = real_list(bounds.key(name), *b);
      if (lim.size() != 2 || !(lim[0] <= lim[1])) {
        fail(bounds.key(name), "expected 'lower upper' with lower <= upper");
      }
      cfg.free.push_back(FreeParameter{name, lim[0], lim[1]});
    }
  }
  ctl.check_unused();
  bounds.check_unused();

  // [scan]
  Section scn = section(root, "scan");
  for (const auto& [name, value] : scn.entries()) {
    rethrow_as_config(scn.key(name), [&] { read_parameter(cfg.pulse, name); });
    const auto spec = real_list(scn.key(name), value);
    if (spec.size() != 3 || spec[2] < 1 || spec[2] != std::floor(spec[2])) {
      fail(scn.key(name), "expected 'lower upper points' with points >= 1");
    }
    cfg.scan.push_back(ScanAxis{name, spec[0], spec[1], static_cast<int>(spec[2])});
  }

  // [output]
  Section out = section(root, "output");
  if (auto v = out.get("trajectory")) cfg.trajectory_path = trim(*v);
  out.check_unused();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string render_pulse(const PulseShape& pulse) {
  std::ostringstream out;
  out << "[pulse]\n"
      << "kind = " << pulse_kind_name(pulse.kind()) << '\n'
      << "amplitude = " << fmt_real(pulse.amplitude()) << '\n'
      << "carrier = " << fmt_real(pulse.carrier()) << '\n'
      << "phase = " << fmt_real(pulse.phase()) << '\n'
      << "duration = " << fmt_real(pulse.duration()) << '\n'
      << "repeats = " << pulse.repeats() << '\n';
  if (pulse.kind() == PulseKind::kSampled) {
    out << "samples =";
    for (double s : pulse.samples()) out << ' ' << fmt_real(s);
    out << '\n';
  }
  return out.str();
}

std::string render_config(const RunConfig& cfg) {
  std::ostringstream out;
  const int n = cfg.system.levels();
  out << "[system]\nlevels = " << n << "\nenergies =";
  for (int j = 0; j < n; ++j) out << ' ' << fmt_real(cfg.system.energies()(j));
  out << "\ndipole =";
  for (int r = 0; r < n; ++r) {
    out << (r ? " ;" : "");
    for (int c = 0; c < n; ++c) out << ' ' << fmt_complex(cfg.system.dipole()(r, c));
  }
  out << "\n\n" << render_pulse(cfg.pulse);
  out << "\n[integrator]\ntol = " << fmt_real(cfg.integrator.tol)
      << "\nstep_init = " << fmt_real(cfg.integrator.step_init)
      << "\nmax_steps = " << cfg.integrator.max_steps
      << "\nmax_step = " << fmt_real(cfg.integrator.max_step) << "\n";
  out << "\n[targets]\ni = " << cfg.level_i + 1 << "\nf = " << cfg.level_f + 1
      << "\ninitial = " << fmt_vector(cfg.initial.amplitudes())
      << "\nfinal = " << fmt_vector(cfg.final.amplitudes())
      << "\nbeta = " << fmt_real(cfg.beta)
      << "\nphase_locked = " << (cfg.phase_locked ? "true" : "false") << "\n";
  out << "\n[control]\nmode = " << target_mode_name(cfg.mode)
      << "\nbudget = " << cfg.budget;
  if (!cfg.free.empty()) {
    out << "\nfree =";
    for (const auto& p : cfg.free) out << ' ' << p.name;
    out << "\n\n[bounds]";
    for (const auto& p : cfg.free) {
      out << '\n' << p.name << " = " << fmt_real(p.lower) << ' ' << fmt_real(p.upper);
    }
  }
  out << '\n';
  if (!cfg.scan.empty()) {
    out << "\n[scan]";
    for (const auto& a : cfg.scan) {
      out << '\n' << a.name << " = " << fmt_real(a.lower) << ' ' << fmt_real(a.upper)
          << ' ' << a.points;
    }
    out << '\n';
  }
  if (cfg.trajectory_path) {
    out << "\n[output]\ntrajectory = " << *cfg.trajectory_path << '\n';
  }
  return out.str();
}

}  // namespace floqinv

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

// floqinv command-line front end. Talks to the library only through the C
// interface.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "floqinv/floqinv.h"

namespace {

constexpr const char* kThreadsEnv = "FLOQINV_THREADS";

struct StringDeleter {
  void operator()(char* s) const { floqinv_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ConfigDeleter {
  void operator()(floqinv_config* c) const { floqinv_config_free(c); }
};

int report_failure(floqinv_status status) {
  std::cerr << "floqinv: " << floqinv_status_name(status) << ": "
            << floqinv_last_error() << '\n';
  return floqinv_exit_code(status);
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "floqinv: io: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

// --threads wins over the environment; 1 when neither is set.
std::optional<int> resolve_threads(std::optional<int> flag) {
  if (flag) return flag;
  const char* env = std::getenv(kThreadsEnv);
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (*end != '\0' || value < 1 || value > 4096) {
    std::cerr << "floqinv: config: " << kThreadsEnv
              << " must be a positive integer, got '" << env << "'\n";
    return std::nullopt;
  }
  return static_cast<int>(value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floquet analysis of pulse-driven N-level systems"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_version_flag("--version", floqinv_version());

  std::string config_path;
  std::string out_path;
  bool csv = false;
  std::optional<double> tol;
  std::optional<int> threads;
  app.add_option("--config", config_path, "INI configuration file")->required();
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");
  app.add_flag("--csv", csv, "Machine-readable output");
  app.add_option("--tol", tol, "Classification and criterion tolerance (default 1e-6)")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", threads,
                 "Worker threads for scan/optimize/adiabatic (env FLOQINV_THREADS)")
      ->check(CLI::PositiveNumber);

  const char* commands[][2] = {
      {"propagate", "Trajectory CSV over the pulse support"},
      {"floquet", "Quasienergies of the monodromy matrix and the spacing criterion"},
      {"analyze", "SU(2) parameters, eigenvalues and the sufficient test (two levels)"},
      {"classify", "PI/PSPI/PC/PSPC classification of the configured transfer"},
      {"adiabatic", "Period-by-period Floquet tracking and the phase integral"},
      {"optimize", "Fit the free pulse parameters to the target"},
      {"scan", "Evaluate the target over a parameter grid (CSV)"},
  };
  for (const auto& c : commands) app.add_subcommand(c[0], c[1]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  const std::optional<int> thread_count = resolve_threads(threads);
  if (!thread_count) return 2;

  floqinv_config* raw = nullptr;
  floqinv_status status = floqinv_config_load(config_path.c_str(), &raw);
  if (status != FLOQINV_OK) return report_failure(status);
  std::unique_ptr<floqinv_config, ConfigDeleter> cfg(raw);

  const floqinv_options options{csv ? 1 : 0, tol.value_or(0.0), *thread_count};
  char* body_raw = nullptr;
  int is_csv = 0;
  status = floqinv_run_command(cfg.get(), command.c_str(), &options, &body_raw, &is_csv);
  OwnedString body(body_raw);
  if (status != FLOQINV_OK && status != FLOQINV_ERR_BUDGET) return report_failure(status);

  std::string destination = out_path;
  if (destination.empty() && command == "propagate") {
    if (const char* p = floqinv_config_trajectory_path(cfg.get())) destination = p;
  }
  if (destination.empty()) {
    std::cout << body.get();
    std::cout.flush();
  } else if (!write_file(destination, body.get())) {
    return 2;
  }

  // CSV bodies carry no config echo; it goes next to the file instead.
  if (is_csv && !destination.empty()) {
    char* echo_raw = nullptr;
    const floqinv_status render = floqinv_config_render(cfg.get(), &echo_raw);
    if (render != FLOQINV_OK) return report_failure(render);
    OwnedString echo(echo_raw);
    if (!write_file(destination + ".config.ini", echo.get())) return 2;
  }

  if (status == FLOQINV_ERR_BUDGET) return report_failure(status);
  return 0;
}

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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "floqinv/config.hpp"

namespace floqinv {

struct CommandOptions {
  bool csv = false;
  /// Classification / criterion tolerance; 1e-6 when unset.
  std::optional<double> tol;
  int threads = 1;
};

struct CommandOutput {
  /// Report text, or CSV for the tabular commands and in --csv mode.
  std::string body;
  bool is_csv = false;
  /// Set by optimize when the budget ran out; body still holds the best point.
  bool budget_exhausted = false;
};

const std::vector<std::string_view>& command_names();

/// Runs one subcommand. Text reports open with the resolved configuration;
/// CSV bodies start with their header row. Throws Error.
CommandOutput run_command(const RunConfig& cfg, std::string_view name,
                          const CommandOptions& opts);

}  // namespace floqinv

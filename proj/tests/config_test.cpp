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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "floqinv/commands.hpp"
#include "floqinv/config.hpp"
#include "floqinv/error.hpp"

namespace floqinv {
namespace {

const std::string kBase =
    "[system]\n"
    "levels = 2\n"
    "energies = 0 1\n"
    "dipole = 0 1 ; 1 0\n"
    "[pulse]\n"
    "kind = rectangular\n"
    "amplitude = 0.025\n"
    "carrier = 1\n"
    "duration = 125.66370614359172\n";

// Message of the kConfig error raised by parse_config(text).
std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "config accepted:\n" << text;
  return {};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST(ParseConfig, MinimalDefaults) {
  const auto cfg = parse_config(kBase);
  EXPECT_EQ(cfg.system.levels(), 2);
  EXPECT_EQ(cfg.pulse.kind(), PulseKind::kRectangular);
  EXPECT_DOUBLE_EQ(cfg.pulse.amplitude(), 0.025);
  EXPECT_EQ(cfg.level_i, 0);
  EXPECT_EQ(cfg.level_f, 1);
  EXPECT_EQ(cfg.initial.amplitudes(), StateVector::basis(2, 0).amplitudes());
  EXPECT_EQ(cfg.final.amplitudes(), StateVector::basis(2, 1).amplitudes());
  EXPECT_EQ(cfg.mode, TargetMode::kPI);
  EXPECT_DOUBLE_EQ(cfg.integrator.tol, IntegratorConfig{}.tol);
  EXPECT_FALSE(cfg.trajectory_path.has_value());
}

TEST(ParseConfig, ComplexDipoleEntries) {
  const auto cfg = parse_config(
      "[system]\nlevels = 2\nenergies = 0 1\ndipole = 0.5 2i ; -2i -0.5\n"
      "[pulse]\nkind = sin2\namplitude = 1\ncarrier = 1\nduration = 1\n");
  const CMatrix& mu = cfg.system.dipole();
  EXPECT_EQ(mu(0, 0), Complex(0.5, 0.0));
  EXPECT_EQ(mu(0, 1), Complex(0.0, 2.0));
  EXPECT_EQ(mu(1, 0), Complex(0.0, -2.0));
  EXPECT_EQ(mu(1, 1), Complex(-0.5, 0.0));
}

TEST(ParseConfig, ComplexStateVectors) {
  const auto cfg = parse_config(kBase +
                                "[targets]\ninitial = 0.6 0.8i\nfinal = 0.6-0.8i 0\n");
  EXPECT_EQ(cfg.initial[1], Complex(0.0, 0.8));
  EXPECT_EQ(cfg.final[0], Complex(0.6, -0.8));
}

TEST(ParseConfig, ControlBlock) {
  const auto cfg = parse_config(kBase +
                                "[control]\nmode = PsPi\nfree = amplitude carrier\nbudget = 50\n"
                                "[bounds]\namplitude = 0.01 0.05\ncarrier = 0.9 1.1\n"
                                "[targets]\nbeta = 0.25\n");
  EXPECT_EQ(cfg.mode, TargetMode::kPSPI);
  ASSERT_EQ(cfg.free.size(), 2u);
  EXPECT_EQ(cfg.free[1].name, "carrier");
  EXPECT_DOUBLE_EQ(cfg.free[1].upper, 1.1);
  EXPECT_EQ(cfg.budget, 50);
  const auto problem = cfg.control_problem(1e-4, 2);
  EXPECT_DOUBLE_EQ(problem.target.beta, 0.25);
  EXPECT_EQ(problem.threads, 2);
  EXPECT_DOUBLE_EQ(problem.report_tol, 1e-4);
}

TEST(ParseConfig, ScanAxes) {
  const auto cfg = parse_config(kBase + "[scan]\namplitude = 0.01 0.03 5\ncarrier = 0.9 1.1 2\n");
  ASSERT_EQ(cfg.scan.size(), 2u);
  EXPECT_EQ(cfg.scan[0].name, "amplitude");
  EXPECT_EQ(cfg.scan[0].points, 5);
  EXPECT_DOUBLE_EQ(cfg.scan[0].value(4), 0.03);
}

TEST(ParseConfig, UnknownKeyNamed) {
  const auto msg = config_error(kBase + "amplitud = 3\n");
  EXPECT_TRUE(contains(msg, "pulse.amplitud")) << msg;
}

TEST(ParseConfig, UnknownSectionNamed) {
  const auto msg = config_error(kBase + "[puls]\nkind = sin2\n");
  EXPECT_TRUE(contains(msg, "puls")) << msg;
}

TEST(ParseConfig, MissingRequiredKeyNamed) {
  const auto msg = config_error(
      "[system]\nlevels = 2\nenergies = 0 1\ndipole = 0 1 ; 1 0\n"
      "[pulse]\nkind = sin2\namplitude = 1\ncarrier = 1\n");
  EXPECT_TRUE(contains(msg, "pulse.duration")) << msg;
}

TEST(ParseConfig, MalformedNumberNamed) {
  const auto msg = config_error(
      "[system]\nlevels = 2\nenergies = 0 one\ndipole = 0 1 ; 1 0\n"
      "[pulse]\nkind = sin2\namplitude = 1\ncarrier = 1\nduration = 1\n");
  EXPECT_TRUE(contains(msg, "system.energies")) << msg;
}

TEST(ParseConfig, NonHermitianDipoleNamed) {
  const auto msg = config_error(
      "[system]\nlevels = 2\nenergies = 0 1\ndipole = 0 1 ; 2 0\n"
      "[pulse]\nkind = sin2\namplitude = 1\ncarrier = 1\nduration = 1\n");
  EXPECT_TRUE(contains(msg, "system.dipole")) << msg;
}

TEST(ParseConfig, SyntaxErrorGivesLine) {
  const auto msg = config_error("[system]\nlevels = 2\n[pulse\n");
  EXPECT_TRUE(contains(msg, "line 3")) << msg;
}

TEST(ParseConfig, FreeParameterNeedsBounds) {
  const auto msg = config_error(kBase + "[control]\nfree = amplitude\n");
  EXPECT_TRUE(contains(msg, "bounds.amplitude")) << msg;
}

TEST(ParseConfig, TargetLevelOutOfRange) {
  const auto msg = config_error(kBase + "[targets]\nf = 3\n");
  EXPECT_TRUE(contains(msg, "targets.f")) << msg;
}

TEST(ParseConfig, MissingFileIsIoError) {
  try {
    load_config("/nonexistent/floqinv.ini");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(RenderConfig, RoundTripIsStable) {
  const auto cfg = parse_config(kBase +
                                "phase = 0.1\n"
                                "[integrator]\ntol = 1e-9\n"
                                "[control]\nmode = pc\nfree = amplitude\n"
                                "[bounds]\namplitude = 0.01 0.05\n"
                                "[scan]\ncarrier = 0.9 1.1 3\n"
                                "[output]\ntrajectory = traj.csv\n");
  const std::string once = render_config(cfg);
  const std::string twice = render_config(parse_config(once));
  EXPECT_EQ(once, twice);
  EXPECT_TRUE(contains(once, "0.10000000000000001")) << once;
}

TEST(RenderPulse, FragmentParses) {
  const auto cfg = parse_config(kBase);
  const std::string text = "[system]\nlevels = 2\nenergies = 0 1\ndipole = 0 1 ; 1 0\n" +
                           render_pulse(cfg.pulse);
  const auto again = parse_config(text);
  EXPECT_EQ(again.pulse.amplitude(), cfg.pulse.amplitude());
  EXPECT_EQ(again.pulse.duration(), cfg.pulse.duration());
}

TEST(Commands, ReportsEchoConfig) {
  const auto cfg = parse_config(kBase);
  const std::string echo = render_config(cfg);
  for (const char* name : {"floquet", "analyze", "classify"}) {
    const auto out = run_command(cfg, name, {});
    EXPECT_FALSE(out.is_csv);
    EXPECT_EQ(out.body.compare(0, echo.size(), echo), 0) << name;
  }
}

TEST(Commands, CsvModeHasHeader) {
  const auto cfg = parse_config(kBase);
  CommandOptions opts;
  opts.csv = true;
  const auto out = run_command(cfg, "floquet", opts);
  EXPECT_TRUE(out.is_csv);
  EXPECT_EQ(out.body.substr(0, out.body.find('\n')), "level,omega,q");
  const auto classify = run_command(cfg, "classify", opts);
  std::istringstream in(classify.body);
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_TRUE(contains(header, "pop2"));
  EXPECT_EQ(std::count(header.begin(), header.end(), ','),
            std::count(row.begin(), row.end(), ','));
}

TEST(Commands, PropagateIsTrajectory) {
  const auto out = run_command(parse_config(kBase), "propagate", {});
  EXPECT_TRUE(out.is_csv);
  EXPECT_EQ(out.body.substr(0, out.body.find('\n')),
            "t,re_psi1,im_psi1,pop1,re_psi2,im_psi2,pop2");
}

TEST(Commands, AnalyzeRejectsThreeLevels) {
  const auto cfg = parse_config(
      "[system]\nlevels = 3\nenergies = 0 1 2\ndipole = 0 1 0 ; 1 0 1 ; 0 1 0\n"
      "[pulse]\nkind = sin2\namplitude = 0.1\ncarrier = 1\nduration = 10\n");
  try {
    run_command(cfg, "analyze", {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST(Commands, ScanNeedsAxes) {
  EXPECT_THROW(run_command(parse_config(kBase), "scan", {}), Error);
}

TEST(Commands, UnknownCommand) {
  EXPECT_THROW(run_command(parse_config(kBase), "transmogrify", {}), Error);
  EXPECT_EQ(command_names().size(), 7u);
}

}  // namespace
}  // namespace floqinv

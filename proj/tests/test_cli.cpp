#include "voxsim/cli/commands.hpp"
#include "voxsim/frames.hpp"
#include "voxsim/scene.hpp"
#include "voxsim/scenes.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

using namespace voxsim;
using namespace voxsim::cli;

namespace {

int call(std::vector<std::string> args) {
  args.insert(args.begin(), "voxsim");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  testing::internal::CaptureStdout();
  testing::internal::CaptureStderr();
  const int code = run_cli(static_cast<int>(argv.size()), argv.data());
  testing::internal::GetCapturedStdout();
  testing::internal::GetCapturedStderr();
  return code;
}

std::filesystem::path temp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST(CmdRun, ZeroStepsWritesOneFrame) {
  RunOptions opt;
  opt.steps = 0;
  opt.frames = temp("voxsim_cli_zero.jsonl");
  const RunReport r = cmd_run(scenes::thin_cantilever(), opt);
  EXPECT_EQ(r.steps, 0);
  EXPECT_EQ(r.iterations_per_second, 0.0);
  std::ifstream in(opt.frames);
  const auto frames = read_frames(in);
  ASSERT_EQ(frames.size(), 1u);
  EXPECT_EQ(frames[0].step, 0);
  std::filesystem::remove(opt.frames);
}

TEST(CmdRun, ReportIsConsistent) {
  RunOptions opt;
  opt.steps = 500;
  opt.frames = temp("voxsim_cli_run.jsonl");
  opt.frame_every = 100;
  const RunReport a = cmd_run(scenes::cube(4), opt);
  EXPECT_EQ(a.steps, 500);
  EXPECT_EQ(a.voxels, 64);
  EXPECT_NEAR(a.voxel_iterations_per_second, a.iterations_per_second * a.voxels, 1e-9 * a.voxel_iterations_per_second);
  EXPECT_EQ(a.dt_min, a.dt_max);
  std::ifstream in(opt.frames);
  EXPECT_EQ(read_frames(in).size(), 6u);

  const RunReport b = cmd_run(scenes::cube(4), opt);
  EXPECT_EQ(a.max_displacement, b.max_displacement);
  EXPECT_EQ(a.sim_time, b.sim_time);
  std::filesystem::remove(opt.frames);
}

TEST(CmdRun, OverridesApply) {
  RunOptions opt;
  opt.steps = 1;
  opt.overrides.dt_safety = 0.5;
  const Scene s = scenes::thin_cantilever();
  const RunReport half = cmd_run(s, opt);
  opt.overrides.dt_safety = 1.0;
  const RunReport full = cmd_run(s, opt);
  EXPECT_NEAR(half.dt_max, 0.5 * full.dt_max, 1e-12 * full.dt_max);
  opt.overrides.zeta_bond = -1.0;
  EXPECT_THROW(cmd_run(s, opt), std::exception);
}

TEST(CmdRun, NegativeStepsRejected) {
  RunOptions opt;
  opt.steps = -1;
  EXPECT_THROW(cmd_run(scenes::single_voxel(), opt), std::invalid_argument);
}

TEST(Names, UnknownSuiteAndDemoThrow) {
  EXPECT_THROW(cmd_validate("bogus"), std::invalid_argument);
  EXPECT_THROW(cmd_demo("bogus", {}), std::invalid_argument);
  EXPECT_EQ(validation_suites(), (std::vector<std::string>{"static", "dynamic", "damping", "friction"}));
}

TEST(Validate, StaticSuitePasses) {
  const std::vector<Check> checks = cmd_validate("static");
  ASSERT_FALSE(checks.empty());
  for (const Check& c : checks) EXPECT_TRUE(c.pass) << c.name;
}

TEST(RunCli, ExitCodes) {
  const auto scene = temp("voxsim_cli_scene.json");
  save_scene_file(scenes::cube(2), scene);
  EXPECT_EQ(call({"run", scene.string(), "--steps", "10"}), 0);
  EXPECT_EQ(call({"run", "cube", "--steps", "5"}), 0);
  EXPECT_EQ(call({"run", "no-such-scene"}), 1);
  EXPECT_EQ(call({"validate", "bogus"}), 1);
  EXPECT_EQ(call({"demo", "bogus"}), 1);
  EXPECT_NE(call({"run", scene.string(), "--steps", "1", "--sim-time", "1"}), 0);
  EXPECT_NE(call({}), 0);
  EXPECT_EQ(call({"validate", "static"}), 0);
  std::filesystem::remove(scene);
}

#pragma once

// Command implementations behind the voxsim executable. Each command takes
// parsed options and returns plain data so it can be driven from tests.

#include "voxsim/experiments.hpp"
#include "voxsim/scene.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace voxsim::cli {

enum ExitCode { kPass = 0, kRunError = 1, kValidationFailure = 2 };

/// Solver overrides shared by every command that runs a scene.
struct SolverOverrides {
  std::optional<CollisionScheme> scheme;
  std::optional<double> horizon;
  std::optional<double> zeta_bond;
  std::optional<double> zeta_ground;
  std::optional<double> zeta_collision;
  std::optional<double> dt_safety;

  /// Throws ModelError when the result is out of range.
  void apply(SimConfig& config) const;
};

struct RunOptions {
  std::optional<long> steps;
  std::optional<double> sim_time;  // used when steps is unset
  SolverOverrides overrides;
  std::filesystem::path trace;   // empty: no trace
  std::filesystem::path frames;  // empty: no frame dump
  long frame_every = 1;
  bool frame_strain = false;
};

struct RunReport {
  long steps = 0;
  int voxels = 0;
  double wall_seconds = 0.0;
  double iterations_per_second = 0.0;
  double voxel_iterations_per_second = 0.0;
  double dt_min = 0.0;
  double dt_max = 0.0;
  double sim_time = 0.0;
  double max_displacement = 0.0;
  bool diverged = false;
  std::string error;  // divergence message
};

/// Runs a scene. Divergence is reported in the result, not thrown; other
/// failures (unwritable outputs, invalid overrides) throw.
RunReport cmd_run(const Scene& scene, const RunOptions& options);
void print_report(std::ostream& out, const RunReport& report);

/// One row of a validation table.
struct Check {
  std::string suite;
  std::string name;
  std::string unit;
  double simulated = 0.0;
  double oracle = 0.0;  // NaN when there is no oracle value
  double reference = 0.0;  // published value, NaN when there is none
  bool pass = false;
  std::string criterion;
};

std::vector<std::string> validation_suites();
/// suite is one of validation_suites() or "all". Throws
/// std::invalid_argument for anything else.
std::vector<Check> cmd_validate(const std::string& suite);
void print_checks(std::ostream& out, std::span<const Check> checks);

struct BenchOptions {
  std::optional<std::filesystem::path> scene;  // default: built-in clapper
  double duration = 0.02;                      // simulated seconds per scheme
  int repeats = 1;                             // runs per scheme, fastest kept
  std::vector<CollisionScheme> schemes{CollisionScheme::AllEvery, CollisionScheme::SurfEvery,
                                       CollisionScheme::AllHorizon, CollisionScheme::SurfHorizon};
  bool sweep = false;
  std::vector<int> sweep_sizes{5, 6, 8, 10, 12, 14, 16};
  long sweep_steps = 2000;
};

struct BenchReport {
  std::vector<SchemeRun> schemes;
  double max_position_spread = 0.0;  // worst disagreement with the first scheme
  std::vector<Throughput> sweep;
};

BenchReport cmd_bench(const BenchOptions& options);
void print_bench(std::ostream& out, const BenchReport& report);

std::vector<std::string> demo_names();

struct DemoOptions {
  std::filesystem::path out_dir = ".";
  long frame_every = 100;
  SolverOverrides overrides;
};

/// Writes the demo outputs into out_dir and returns the paths written.
/// Throws std::invalid_argument listing demo_names() for unknown names.
std::vector<std::filesystem::path> cmd_demo(const std::string& name, const DemoOptions& options);

/// Full command line entry point; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace voxsim::cli

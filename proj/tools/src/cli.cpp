#include "voxsim/cli/commands.hpp"

#include "voxsim/scenes.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace voxsim::cli {
namespace {

void add_overrides(CLI::App& cmd, SolverOverrides& o, std::string& scheme) {
  cmd.add_option("--scheme", scheme, "Collision scheme")
      ->check(CLI::IsMember({"all-every", "surf-every", "all-horizon", "surf-horizon"}));
  cmd.add_option("--horizon", o.horizon, "Collision horizon in voxels")->check(CLI::PositiveNumber);
  cmd.add_option("--zeta-bond", o.zeta_bond, "Bond damping ratio")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--zeta-ground", o.zeta_ground, "Ground damping ratio")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--zeta-collision", o.zeta_collision, "Collision damping ratio")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--dt-safety", o.dt_safety, "Fraction of the stable timestep")->check(CLI::Range(0.0, 1.0));
}

void resolve_scheme(SolverOverrides& o, const std::string& scheme) {
  if (!scheme.empty()) o.scheme = parse_collision_scheme(scheme);
}

Scene scene_argument(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_scene_file(arg);
  return scenes::by_name(arg);
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Voxel soft-body simulator"};
  app.require_subcommand(1);
  long seed = 0;
  app.add_option("--seed", seed, "Accepted for compatibility; runs are deterministic");

  // run
  auto* run = app.add_subcommand("run", "Simulate a scene file or built-in scene");
  std::string scene_arg, run_scheme;
  RunOptions run_opts;
  run->add_option("scene", scene_arg, "Scene file, or one of: " + [] {
        std::string s;
        for (const auto& n : scenes::names()) s += (s.empty() ? "" : ", ") + n;
        return s;
      }())->required();
  auto* steps_opt = run->add_option("--steps", run_opts.steps, "Number of steps")->check(CLI::NonNegativeNumber);
  run->add_option("--sim-time", run_opts.sim_time, "Simulated seconds")->excludes(steps_opt);
  run->add_option("--trace", run_opts.trace, "Per-step CSV trace");
  run->add_option("--frames", run_opts.frames, "Frame dump (JSON lines)");
  run->add_option("--frame-every", run_opts.frame_every, "Steps between frames")->check(CLI::PositiveNumber);
  run->add_flag("--strain", run_opts.frame_strain, "Include bond strain in frames");
  add_overrides(*run, run_opts.overrides, run_scheme);

  // validate
  auto* validate = app.add_subcommand("validate", "Run the built-in validation suites");
  std::string suite = "all";
  std::vector<std::string> suites = validation_suites();
  suites.push_back("all");
  validate->add_option("suite", suite, "Suite to run")->check(CLI::IsMember(suites));

  // bench
  auto* bench = app.add_subcommand("bench", "Compare collision schemes and measure throughput");
  BenchOptions bench_opts;
  std::string bench_scene;
  std::vector<std::string> bench_schemes;
  bench->add_option("--scene", bench_scene, "Scene file (default: built-in clapper)");
  bench->add_option("--sim-time", bench_opts.duration, "Simulated seconds per scheme")->check(CLI::PositiveNumber);
  bench->add_option("--schemes", bench_schemes, "Schemes to compare")
      ->check(CLI::IsMember({"all-every", "surf-every", "all-horizon", "surf-horizon"}));
  bench->add_option("--repeats", bench_opts.repeats, "Runs per scheme; the fastest is reported")->check(CLI::PositiveNumber);
  bench->add_flag("--sweep", bench_opts.sweep, "Also run the cube size sweep");
  bench->add_option("--sweep-steps", bench_opts.sweep_steps, "Steps per cube size")->check(CLI::PositiveNumber);

  // demo
  auto* demo = app.add_subcommand("demo", "Write frames and traces for a demonstration scene");
  std::string demo_name, demo_scheme;
  DemoOptions demo_opts;
  demo->add_option("name", demo_name, "clapper or cantilever-impulse")->required();
  demo->add_option("--out", demo_opts.out_dir, "Output directory");
  demo->add_option("--frame-every", demo_opts.frame_every, "Steps between frames")->check(CLI::PositiveNumber);
  add_overrides(*demo, demo_opts.overrides, demo_scheme);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kRunError;
  }

  try {
    if (*run) {
      resolve_scheme(run_opts.overrides, run_scheme);
      const RunReport report = cmd_run(scene_argument(scene_arg), run_opts);
      print_report(std::cout, report);
      return report.diverged ? kRunError : kPass;
    }
    if (*validate) {
      const std::vector<Check> checks = cmd_validate(suite);
      print_checks(std::cout, checks);
      for (const Check& c : checks)
        if (!c.pass) return kValidationFailure;
      return kPass;
    }
    if (*bench) {
      if (!bench_scene.empty()) bench_opts.scene = bench_scene;
      if (!bench_schemes.empty()) {
        bench_opts.schemes.clear();
        for (const auto& s : bench_schemes) bench_opts.schemes.push_back(*parse_collision_scheme(s));
      }
      print_bench(std::cout, cmd_bench(bench_opts));
      return kPass;
    }
    if (*demo) {
      resolve_scheme(demo_opts.overrides, demo_scheme);
      for (const auto& path : cmd_demo(demo_name, demo_opts)) std::cout << "wrote " << path.string() << "\n";
      return kPass;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRunError;
  }
  return kRunError;
}

}  // namespace voxsim::cli

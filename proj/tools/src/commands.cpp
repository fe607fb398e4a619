#include "voxsim/cli/commands.hpp"

#include "voxsim/frames.hpp"
#include "voxsim/oracle.hpp"
#include "voxsim/scenes.hpp"
#include "voxsim/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace voxsim::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(17);
  return out;
}

Check within(std::string suite, std::string name, std::string unit, double simulated, double oracle, double reference,
             double lo, double hi, std::string criterion) {
  return {std::move(suite), std::move(name), std::move(unit), simulated, oracle, reference,
          simulated >= lo && simulated <= hi, std::move(criterion)};
}

std::string band(double lo, double hi) {
  std::ostringstream s;
  s << "[" << lo << ", " << hi << "]";
  return s.str();
}

std::vector<Check> static_suite() {
  std::vector<Check> out;
  const double mm = 1e3;

  const Scene thin = scenes::thin_cantilever();
  const StaticComparison t = compare_static(thin);
  const double analytic = analytic_cantilever_deflection(3e-5, 0.019, 1e6, 1e-12 / 12.0);
  out.push_back(within("static", "thin beam direct stiffness", "mm", t.direct_stiffness * mm, analytic * mm, 0.823,
                       0.823 * 0.995, 0.823 * 1.005, "0.823 +/- 0.5%"));
  out.push_back(within("static", "thin beam relaxation", "mm", t.dynamic.deflection * mm, t.direct_stiffness * mm,
                       0.822, 0.81, 0.83, band(0.81, 0.83)));

  const Scene thick = scenes::thick_cantilever();
  const StaticComparison k = compare_static(thick);
  out.push_back(within("static", "thick beam direct stiffness", "mm", k.direct_stiffness * mm, kNaN, 0.546,
                       0.546 * 0.99, 0.546 * 1.01, "0.546 +/- 1%"));
  Check dyn = within("static", "thick beam relaxation", "mm", k.dynamic.deflection * mm, k.direct_stiffness * mm,
                     0.538, 0.538 * 0.98, 0.538 * 1.02, "0.538 +/- 2%, <= direct");
  dyn.pass = dyn.pass && k.dynamic.deflection <= k.direct_stiffness;
  out.push_back(dyn);
  return out;
}

std::vector<Check> dynamic_suite() {
  std::vector<Check> out;
  const double density = scenes::modal_beam_density(389.0);
  const ModalResult r = run_modal(scenes::modal_beam(density), 6);
  const double beam_ratio[] = {1.0, 6.26, 17.54, 34.38, 56.83, 84.87};
  constexpr double kReferenceMode1 = 404.0;

  const double f1 = r.peaks.empty() ? kNaN : r.peaks.front().frequency;
  const std::vector<double> analytic = analytic_natural_frequencies(1e6, 1e-12 / 12.0, density * 1e-6, 0.02, 6);
  out.push_back(within("dynamic", "mode 1", "Hz", f1, analytic[0], kReferenceMode1, 380, 430, band(380, 430)));
  for (int n = 2; n <= 6; ++n) {
    const double ratio = static_cast<int>(r.peaks.size()) >= n ? r.peaks[n - 1].frequency / f1 : kNaN;
    const double ref = beam_ratio[n - 1];
    out.push_back(within("dynamic", "mode " + std::to_string(n) + " / mode 1", "", ratio, analytic[n - 1] / analytic[0],
                         ref, ref * 0.93, ref * 1.07, "within 7% of " + std::to_string(ref).substr(0, 5)));
  }
  return out;
}

std::vector<Check> damping_suite() {
  const NoiseFloorResult r = damping_noise_floor(scenes::appendix_cantilever(), 20000, 5000);
  Check c{"damping", "jitter ratio zeta 0 / zeta 1", "", r.ratio, kNaN, 1e7, r.ratio >= 1e4, ">= 1e4"};
  return {c};
}

std::vector<Check> friction_suite() {
  const FrictionResult r = friction_ramp(scenes::friction_block());
  std::vector<Check> out;
  const double lag = static_cast<double>(r.observed_break_step - r.predicted_break_step);
  Check brk{"friction", "breakaway step lag", "steps", lag, 0.0, kNaN,
            r.predicted_break_step > 0 && std::abs(lag) <= 1.0, "|lag| <= 1"};
  out.push_back(brk);
  out.push_back(within("friction", "sliding deceleration", "m/s^2", r.measured_deceleration, r.expected_deceleration,
                       kNaN, r.expected_deceleration * 0.98, r.expected_deceleration * 1.02, "mu_d g +/- 2%"));
  Check halt{"friction", "halts without reversing", "", static_cast<double>(r.halt_step), kNaN, kNaN,
             r.halt_step > 0 && !r.reversed && r.stayed_halted, "halts, no sign change"};
  out.push_back(halt);
  return out;
}

std::vector<Throughput> cube_sweep(const std::vector<int>& sizes, long steps) {
  std::vector<Throughput> out;
  for (int n : sizes) out.push_back(measure_throughput(scenes::cube(n), steps));
  return out;
}

}  // namespace

void SolverOverrides::apply(SimConfig& c) const {
  if (scheme) c.collision_scheme = *scheme;
  if (horizon) c.horizon_voxels = *horizon;
  if (zeta_bond) c.zeta_bond = *zeta_bond;
  if (zeta_ground) c.zeta_ground = *zeta_ground;
  if (zeta_collision) c.zeta_collision = *zeta_collision;
  if (dt_safety) c.dt_safety = *dt_safety;
  c.validate();
}

RunReport cmd_run(const Scene& input, const RunOptions& options) {
  Scene scene = input;
  options.overrides.apply(scene.sim);
  Simulation sim(scene);

  std::optional<TraceWriter> trace;
  if (!options.trace.empty()) trace.emplace(options.trace);
  std::ofstream frames;
  if (!options.frames.empty()) frames = open_output(options.frames);
  const long every = std::max(1L, options.frame_every);
  auto dump = [&] {
    if (frames.is_open()) write_frame(frames, capture_frame(sim, options.frame_strain));
  };

  RunReport report;
  report.voxels = sim.active_voxel_count();
  report.dt_min = report.dt_max = sim.stable_dt();
  const long steps = options.steps ? *options.steps
                     : options.sim_time ? static_cast<long>(std::ceil(*options.sim_time / sim.stable_dt()))
                                        : 0;
  if (steps < 0) throw std::invalid_argument("step count must not be negative");

  dump();
  const auto start = std::chrono::steady_clock::now();
  try {
    for (long i = 0; i < steps; ++i) {
      const StepStats s = sim.step();
      ++report.steps;
      report.dt_min = std::min(report.dt_min, s.dt);
      report.dt_max = std::max(report.dt_max, s.dt);
      if (trace) trace->write(s);
      if (s.step % every == 0) dump();
    }
  } catch (const DivergenceError& e) {
    report.diverged = true;
    report.error = e.what();
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (report.wall_seconds > 0.0) {
    report.iterations_per_second = report.steps / report.wall_seconds;
    report.voxel_iterations_per_second = report.iterations_per_second * report.voxels;
  }
  report.sim_time = sim.time();
  if (!report.diverged) report.max_displacement = sim.max_displacement();
  return report;
}

void print_report(std::ostream& out, const RunReport& r) {
  out << "steps                " << r.steps << "\n"
      << "voxels               " << r.voxels << "\n"
      << "simulated time s     " << r.sim_time << "\n"
      << "wall time s          " << r.wall_seconds << "\n"
      << "iterations/s         " << r.iterations_per_second << "\n"
      << "voxel iterations/s   " << r.voxel_iterations_per_second << "\n"
      << "dt min/max s         " << r.dt_min << " / " << r.dt_max << "\n"
      << "max displacement m   " << r.max_displacement << "\n"
      << "diverged             " << (r.diverged ? "yes" : "no") << "\n";
  if (r.diverged) out << "error                " << r.error << "\n";
}

std::vector<std::string> validation_suites() { return {"static", "dynamic", "damping", "friction"}; }

std::vector<Check> cmd_validate(const std::string& suite) {
  if (suite == "all") {
    std::vector<Check> all;
    for (const auto& s : validation_suites()) {
      auto part = cmd_validate(s);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  if (suite == "static") return static_suite();
  if (suite == "dynamic") return dynamic_suite();
  if (suite == "damping") return damping_suite();
  if (suite == "friction") return friction_suite();
  throw std::invalid_argument("unknown suite '" + suite + "' (expected " + join(validation_suites()) + " or all)");
}

void print_checks(std::ostream& out, std::span<const Check> checks) {
  auto num = [](double v) {
    std::ostringstream s;
    if (std::isnan(v))
      s << "-";
    else
      s << std::setprecision(5) << v;
    return s.str();
  };
  out << std::left << std::setw(10) << "suite" << std::setw(32) << "check" << std::setw(14) << "simulated"
      << std::setw(14) << "oracle" << std::setw(14) << "reference" << std::setw(8) << "unit" << std::setw(26)
      << "criterion" << "result\n";
  for (const Check& c : checks)
    out << std::left << std::setw(10) << c.suite << std::setw(32) << c.name << std::setw(14) << num(c.simulated)
        << std::setw(14) << num(c.oracle) << std::setw(14) << num(c.reference) << std::setw(8) << c.unit
        << std::setw(26) << c.criterion << (c.pass ? "PASS" : "FAIL") << "\n";
}

BenchReport cmd_bench(const BenchOptions& options) {
  BenchReport report;
  const Scene scene = options.scene ? load_scene_file(*options.scene) : scenes::clapper();
  if (!options.schemes.empty()) {
    report.schemes = compare_schemes(scene, options.duration, options.schemes, options.repeats);
    for (const SchemeRun& run : report.schemes)
      report.max_position_spread = std::max(
          report.max_position_spread, max_position_difference(run.final_positions, report.schemes.front().final_positions));
  }
  if (options.sweep) report.sweep = cube_sweep(options.sweep_sizes, options.sweep_steps);
  return report;
}

void print_bench(std::ostream& out, const BenchReport& r) {
  if (!r.schemes.empty()) {
    const double base = r.schemes.front().iterations_per_second;
    out << std::left << std::setw(14) << "scheme" << std::setw(10) << "steps" << std::setw(14) << "iter/s"
        << std::setw(10) << "speedup" << std::setw(10) << "rebuilds" << "max contacts\n";
    for (const SchemeRun& s : r.schemes)
      out << std::left << std::setw(14) << to_string(s.scheme) << std::setw(10) << s.steps << std::setw(14)
          << std::setprecision(5) << s.iterations_per_second << std::setw(10) << s.iterations_per_second / base
          << std::setw(10) << s.pair_rebuilds << s.max_active_contacts << "\n";
    out << "largest final position difference between schemes: " << r.max_position_spread << " m\n";
  }
  if (!r.sweep.empty()) {
    out << std::left << std::setw(10) << "voxels" << std::setw(14) << "iter/s" << "voxel iter/s\n";
    for (const Throughput& t : r.sweep)
      out << std::left << std::setw(10) << t.voxels << std::setw(14) << std::setprecision(5) << t.iterations_per_second
          << t.voxel_iterations_per_second << "\n";
  }
}

std::vector<std::string> demo_names() { return {"clapper", "cantilever-impulse"}; }

std::vector<std::filesystem::path> cmd_demo(const std::string& name, const DemoOptions& options) {
  const auto names = demo_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw std::invalid_argument("unknown demo '" + name + "' (available: " + join(names) + ")");
  std::filesystem::create_directories(options.out_dir);
  std::vector<std::filesystem::path> written;

  if (name == "clapper") {
    Scene scene = scenes::clapper();
    options.overrides.apply(scene.sim);
    RunOptions run;
    run.sim_time = 2.0 * scene.environment.temp_period;
    run.frames = options.out_dir / "clapper_frames.jsonl";
    run.trace = options.out_dir / "clapper_trace.csv";
    run.frame_every = options.frame_every;
    run.frame_strain = true;
    const RunReport report = cmd_run(scene, run);
    if (report.diverged) throw SimulationFault(report.error);
    written = {run.frames, run.trace};
    return written;
  }

  Scene scene = scenes::modal_beam(scenes::modal_beam_density());
  options.overrides.apply(scene.sim);
  const ModalResult r = run_modal(scene, 6);
  const auto trace_path = options.out_dir / "impulse_trace.csv";
  std::ofstream trace = open_output(trace_path);
  trace << "time,tip_z\n";
  for (std::size_t i = 0; i < r.trace.size(); ++i) trace << (i + 1) * r.sample_period << ',' << r.trace[i] << '\n';
  const auto spectrum_path = options.out_dir / "impulse_spectrum.csv";
  write_spectrum_csv(spectrum_path, r.trace, r.sample_period);
  const auto modes_path = options.out_dir / "impulse_modes.csv";
  std::ofstream modes = open_output(modes_path);
  modes << "mode,frequency,amplitude\n";
  for (const ModalEstimate& p : r.peaks) modes << p.mode << ',' << p.frequency << ',' << p.amplitude << '\n';
  return {trace_path, spectrum_path, modes_path};
}

}  // namespace voxsim::cli

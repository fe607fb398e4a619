#include "voxsim/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace voxsim {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Vec3> external_loads(const Simulation& sim) {
  std::vector<Vec3> f;
  f.reserve(sim.states().size());
  for (const VoxelState& s : sim.states()) f.push_back(s.ext_force);
  return f;
}

int free_end_voxel(const Simulation& sim) {
  int best = -1;
  for (int v = 0; v < sim.topology().voxel_count(); ++v) {
    if (sim.states()[v].fixed) continue;
    if (best < 0 || sim.nominal_position(v).x() > sim.nominal_position(best).x()) best = v;
  }
  return best;
}

double max_abs_dz(std::span<const Vec3> d) {
  double m = 0.0;
  for (const Vec3& v : d) m = std::max(m, std::abs(v.z()));
  return m;
}

}  // namespace

double load_point_deflection(std::span<const Vec3> displacement, std::span<const Vec3> loads) {
  double work = 0.0, total = 0.0;
  for (std::size_t i = 0; i < loads.size() && i < displacement.size(); ++i) {
    work += loads[i].dot(displacement[i]);
    total += loads[i].norm();
  }
  return total > 0.0 ? work / total : 0.0;
}

std::vector<Vec3> displacements(const Simulation& sim) {
  std::vector<Vec3> d;
  d.reserve(sim.states().size());
  for (std::size_t v = 0; v < sim.states().size(); ++v)
    d.push_back(sim.states()[v].position - sim.nominal_position(static_cast<int>(v)));
  return d;
}

RelaxResult relax(Simulation& sim, const RelaxOptions& options) {
  RelaxResult r;
  const auto start = Clock::now();
  const std::vector<Vec3> loads = external_loads(sim);
  double previous = std::numeric_limits<double>::quiet_NaN();
  while (r.steps < options.max_steps) {
    sim.step();
    ++r.steps;
    if (r.steps % options.check_every != 0) continue;
    const double d = load_point_deflection(displacements(sim), loads);
    if (std::abs(d - previous) <= options.tolerance * std::abs(d)) {
      r.converged = true;
      break;
    }
    previous = d;
  }
  const std::vector<Vec3> d = displacements(sim);
  r.deflection = load_point_deflection(d, loads);
  r.max_deflection = max_abs_dz(d);
  r.wall_seconds = seconds_since(start);
  return r;
}

StaticComparison compare_static(const Scene& scene, const RelaxOptions& options) {
  StaticComparison out;
  const auto start = Clock::now();
  const StaticSolution ds = solve_direct_stiffness(scene.object, scene.environment);
  out.solve_seconds = seconds_since(start);
  const ResolvedRegions regions = resolve_regions(scene.object, scene.environment);
  out.direct_stiffness = load_point_deflection(ds.displacement, regions.ext_force);
  out.direct_stiffness_max = ds.max_deflection();

  Simulation sim(scene);
  out.dynamic = relax(sim, options);
  return out;
}

ModalResult run_modal(const Scene& scene, int n_peaks, const ModalOptions& options) {
  ModalResult r;
  Simulation sim(scene);
  r.sample_period = options.duration / options.samples;
  r.substeps = static_cast<int>(std::ceil(r.sample_period / sim.stable_dt()));
  r.dt = r.sample_period / r.substeps;

  const int tip = free_end_voxel(sim);
  VoxelState& s = sim.states()[tip];
  s.linear_momentum.z() = s.mass * options.tip_speed;

  const auto start = Clock::now();
  r.trace.reserve(static_cast<std::size_t>(options.samples));
  for (int i = 0; i < options.samples; ++i) {
    for (int k = 0; k < r.substeps; ++k) sim.step(r.dt);
    r.trace.push_back(sim.states()[tip].position.z());
  }
  r.wall_seconds = seconds_since(start);
  r.peaks = spectrum_peaks(r.trace, r.sample_period, n_peaks);
  return r;
}

JitterResult measure_jitter(Simulation& sim, long relax_steps, long window_steps) {
  for (long i = 0; i < relax_steps; ++i) sim.step();

  // Deviations are accumulated relative to the window's first sample so the
  // variance is not swamped by cancellation against the absolute position.
  const std::size_t n = sim.states().size();
  std::vector<Vec3> ref(n), sum(n, Vec3::Zero());
  std::vector<double> sq(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) ref[v] = sim.states()[v].position;
  for (long i = 0; i < window_steps; ++i) {
    sim.step();
    for (std::size_t v = 0; v < n; ++v) {
      const Vec3 d = sim.states()[v].position - ref[v];
      sum[v] += d;
      sq[v] += d.squaredNorm();
    }
  }
  JitterResult r;
  const double w = static_cast<double>(std::max(1L, window_steps));
  for (std::size_t v = 0; v < n; ++v) {
    const Vec3 mean = sum[v] / w;
    r.jitter = std::max(r.jitter, std::sqrt(std::max(0.0, sq[v] / w - mean.squaredNorm())));
  }
  r.kinetic_energy = sim.kinetic_energy();
  return r;
}

NoiseFloorResult damping_noise_floor(const Scene& scene, long relax_steps, long window_steps) {
  NoiseFloorResult r;
  Scene s = scene;
  s.sim.zeta_bond = 0.0;
  Simulation undamped(s);
  r.undamped = measure_jitter(undamped, relax_steps, window_steps);
  s.sim.zeta_bond = 1.0;
  Simulation damped(s);
  r.damped = measure_jitter(damped, relax_steps, window_steps);
  r.ratio = r.damped.jitter > 0.0 ? r.undamped.jitter / r.damped.jitter : std::numeric_limits<double>::infinity();
  return r;
}

std::vector<SchemeRun> compare_schemes(const Scene& scene, double duration,
                                       std::span<const CollisionScheme> schemes, int repeats) {
  std::vector<SchemeRun> runs(schemes.size());
  // Rounds cycle through every scheme so a change in machine load hits all
  // of them alike.
  for (int round = 0; round < std::max(1, repeats); ++round) {
    for (std::size_t k = 0; k < schemes.size(); ++k) {
      Scene s = scene;
      s.sim.self_collision = true;
      s.sim.collision_scheme = schemes[k];
      Simulation sim(s);
      SchemeRun run;
      run.scheme = schemes[k];
      run.steps = static_cast<long>(std::ceil(duration / sim.stable_dt()));
      const auto start = Clock::now();
      for (long i = 0; i < run.steps; ++i) run.max_active_contacts = std::max(run.max_active_contacts, sim.step().active_contacts);
      run.wall_seconds = seconds_since(start);
      run.iterations_per_second = run.steps / run.wall_seconds;
      run.pair_rebuilds = sim.pair_rebuilds();
      for (const VoxelState& st : sim.states()) run.final_positions.push_back(st.position);
      if (round == 0 || run.wall_seconds < runs[k].wall_seconds) runs[k] = std::move(run);
    }
  }
  return runs;
}

double max_position_difference(std::span<const Vec3> a, std::span<const Vec3> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, (a[i] - b[i]).norm());
  return d;
}

Throughput measure_throughput(const Scene& scene, long steps) {
  Simulation sim(scene);
  Throughput t;
  t.voxels = sim.active_voxel_count();
  t.steps = steps;
  const auto start = Clock::now();
  for (long i = 0; i < steps; ++i) sim.step();
  t.wall_seconds = seconds_since(start);
  if (t.wall_seconds > 0.0) {
    t.iterations_per_second = steps / t.wall_seconds;
    t.voxel_iterations_per_second = t.iterations_per_second * t.voxels;
  }
  return t;
}

FrictionResult friction_ramp(const Scene& block, const FrictionOptions& options) {
  FrictionResult r;
  Simulation sim(block);
  const int n = sim.topology().voxel_count();
  for (long i = 0; i < options.settle_steps; ++i) sim.step();

  double normal = 0.0, mass = 0.0, mu_s = 0.0, mu_d = 0.0;
  for (int v = 0; v < n; ++v) {
    normal += sim.floor_contacts()[v].normal_force;
    mass += sim.states()[v].mass;
  }
  normal /= n;
  mass /= n;
  const MaterialDef& mat = block.object.palette().at(sim.topology().voxels[0].material);
  mu_s = mat.mu_static;
  mu_d = mat.mu_dynamic;
  r.normal_force = normal;
  r.static_limit = mu_s * normal;
  r.expected_deceleration = mu_d * normal / mass;

  auto set_push = [&](double fx) {
    for (VoxelState& s : sim.states()) s.ext_force = Vec3(fx, 0.0, 0.0);
  };
  auto mean_vx = [&] {
    double v = 0.0;
    for (const VoxelState& s : sim.states()) v += s.linear_momentum.x() / s.mass;
    return v / n;
  };

  // Ramp until the block lets go, with a hard cap at twice the nominal span.
  // The half-step offset keeps the limit from landing exactly on a step.
  const double rate = r.static_limit / (options.ramp_steps - 0.5);
  for (long k = 1; k <= 2 * options.ramp_steps; ++k) {
    const double push = rate * k;
    set_push(push);
    sim.step();
    if (r.predicted_break_step < 0) {
      for (int v = 0; v < n; ++v)
        if (push > mu_s * sim.floor_contacts()[v].normal_force) {
          r.predicted_break_step = k;
          break;
        }
    }
    const bool slipping = std::any_of(sim.floor_contacts().begin(), sim.floor_contacts().end(),
                                      [](const FloorContact& c) { return !c.latched; });
    if (slipping) {
      r.observed_break_step = k;
      break;
    }
  }
  if (r.observed_break_step < 0) return r;

  set_push(options.push_factor * r.static_limit);
  for (long i = 0; i < options.push_steps; ++i) sim.step();
  set_push(0.0);

  std::vector<double> t, v;
  for (long i = 1; i <= options.coast_limit; ++i) {
    sim.step();
    const double vx = mean_vx();
    r.peak_speed = std::max(r.peak_speed, std::abs(vx));
    if (vx < 0.0) r.reversed = true;
    if (vx == 0.0) {
      r.halt_step = i;
      break;
    }
    t.push_back(sim.time());
    v.push_back(vx);
  }

  // Least-squares slope over the middle 80% of the coast.
  const std::size_t lo = t.size() / 10, hi = t.size() - t.size() / 10;
  if (hi > lo + 2) {
    double st = 0, sv = 0, stt = 0, stv = 0;
    const double m = static_cast<double>(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
      st += t[i];
      sv += v[i];
      stt += t[i] * t[i];
      stv += t[i] * v[i];
    }
    r.measured_deceleration = -(m * stv - st * sv) / (m * stt - st * st);
  }

  if (r.halt_step > 0) {
    r.stayed_halted = true;
    for (long i = 0; i < 2000; ++i) {
      sim.step();
      for (const VoxelState& s : sim.states()) {
        if (s.linear_momentum.x() != 0.0 || s.linear_momentum.y() != 0.0) r.stayed_halted = false;
        if (s.linear_momentum.x() < 0.0) r.reversed = true;
      }
    }
  }
  return r;
}

}  // namespace voxsim

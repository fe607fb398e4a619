#pragma once

// Validation and benchmark protocols shared by the CLI, the acceptance
// suite and the benchmarks. Each returns raw measurements; judging them
// against tolerances is left to the caller.

#include "voxsim/oracle.hpp"
#include "voxsim/scene.hpp"
#include "voxsim/simulation.hpp"

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace voxsim {

/// Work-conjugate displacement of a set of point loads: sum(f_i . d_i) /
/// sum(|f_i|). For a load split equally over a plane this is the mean
/// displacement of that plane along the load. Zero when there is no load.
double load_point_deflection(std::span<const Vec3> displacement, std::span<const Vec3> loads);

/// Current displacement of every voxel from its lattice position.
std::vector<Vec3> displacements(const Simulation& sim);

struct RelaxOptions {
  long max_steps = 400000;
  int check_every = 2000;
  double tolerance = 1e-7;  // relative change of the deflection between checks
};

struct RelaxResult {
  double deflection = 0.0;      // load-point deflection
  double max_deflection = 0.0;  // largest |dz| over all voxels
  long steps = 0;
  bool converged = false;
  double wall_seconds = 0.0;
};

/// Steps until the load-point deflection stops changing.
RelaxResult relax(Simulation& sim, const RelaxOptions& options = {});

struct StaticComparison {
  double direct_stiffness = 0.0;      // load-point deflection
  double direct_stiffness_max = 0.0;  // largest |dz|
  RelaxResult dynamic;
  double solve_seconds = 0.0;
};

StaticComparison compare_static(const Scene& scene, const RelaxOptions& options = {});

struct ModalOptions {
  int samples = 20000;
  double duration = 0.13;
  double tip_speed = 0.01;  // initial z velocity of the free-end voxel
};

struct ModalResult {
  double dt = 0.0;         // integration step, an exact fraction of the sample period
  int substeps = 0;        // steps per sample
  double sample_period = 0.0;
  std::vector<double> trace;  // free-end z position per sample
  std::vector<ModalEstimate> peaks;
  double wall_seconds = 0.0;
};

/// Impulse test: gives the voxel farthest along +x an initial z velocity
/// and records its z position at evenly spaced instants.
ModalResult run_modal(const Scene& scene, int n_peaks, const ModalOptions& options = {});

struct JitterResult {
  double jitter = 0.0;  // largest per-voxel RMS deviation over the window
  double kinetic_energy = 0.0;
};

/// Runs `relax_steps`, then measures positional jitter over `window_steps`.
JitterResult measure_jitter(Simulation& sim, long relax_steps, long window_steps);

struct NoiseFloorResult {
  JitterResult undamped;  // zeta_bond = 0
  JitterResult damped;    // zeta_bond = 1
  /// undamped / damped; infinite when the damped run is exactly still.
  double ratio = 0.0;
};

NoiseFloorResult damping_noise_floor(const Scene& scene, long relax_steps, long window_steps);

struct SchemeRun {
  CollisionScheme scheme = CollisionScheme::AllEvery;
  long steps = 0;
  double wall_seconds = 0.0;
  double iterations_per_second = 0.0;
  long pair_rebuilds = 0;
  int max_active_contacts = 0;
  std::vector<Vec3> final_positions;
};

/// Runs the same scene for the same simulated duration under each scheme.
/// With repeats > 1 each scheme is run that many times and the fastest run
/// is kept.
std::vector<SchemeRun> compare_schemes(const Scene& scene, double duration,
                                       std::span<const CollisionScheme> schemes, int repeats = 1);

double max_position_difference(std::span<const Vec3> a, std::span<const Vec3> b);

struct Throughput {
  int voxels = 0;
  long steps = 0;
  double wall_seconds = 0.0;
  double iterations_per_second = 0.0;
  double voxel_iterations_per_second = 0.0;
};

Throughput measure_throughput(const Scene& scene, long steps);

struct FrictionOptions {
  long settle_steps = 20000;
  long ramp_steps = 4000;  // steps for the ramp to reach the static limit
  long push_steps = 2000;  // constant push after breakaway
  double push_factor = 2.0;  // push force as a multiple of the static limit
  long coast_limit = 40000;
};

struct FrictionResult {
  double normal_force = 0.0;  // per voxel, after settling
  double static_limit = 0.0;  // mu_s * normal force
  long predicted_break_step = -1;  // first ramp step whose load exceeds the limit
  long observed_break_step = -1;   // first ramp step with any voxel unlatched
  double expected_deceleration = 0.0;  // mu_d * F_n / m
  double measured_deceleration = 0.0;  // fitted over the coast
  double peak_speed = 0.0;
  long halt_step = -1;        // coast step at which the block stopped
  bool reversed = false;      // lateral velocity ever pointed backwards
  bool stayed_halted = false; // no motion after the halt
};

/// Lateral force ramp on a block resting on the floor, then a push and a
/// free coast to rest. Forces act along +x on every voxel.
FrictionResult friction_ramp(const Scene& block, const FrictionOptions& options = {});

}  // namespace voxsim

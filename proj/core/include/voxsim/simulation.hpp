#pragma once

#include "voxsim/bonds.hpp"
#include "voxsim/config.hpp"
#include "voxsim/contact.hpp"
#include "voxsim/dynamics.hpp"
#include "voxsim/model.hpp"
#include "voxsim/scene.hpp"

#include <span>
#include <vector>

namespace voxsim {

/// Instrumentation for one completed step.
struct StepStats {
  long step = 0;          // index of the step just taken (1-based)
  double time = 0.0;      // simulated time after the step
  double dt = 0.0;
  double temperature = 0.0;
  double max_speed = 0.0;
  double kinetic_energy = 0.0;
  double max_displacement = 0.0;
  bool pairs_rebuilt = false;
  int candidate_pairs = 0;
  int active_contacts = 0;
};

/// A scene imported for time stepping: the analog of importing an
/// environment into the simulator and calling TimeStep() repeatedly.
///
/// Each step evaluates every load from a frozen snapshot of the state and
/// only then integrates, so the update order of voxels does not matter.
class Simulation {
 public:
  explicit Simulation(const Scene& scene);
  Simulation(const VoxelObject& object, const Environment& env, const SimConfig& config);

  /// Advances by the stable timestep.
  StepStats step();
  /// Advances by a caller-chosen dt (used to land on sample instants).
  StepStats step(double dt);

  /// Fills loads() from the current state without integrating. Exposed for
  /// inspection; step() calls it.
  void compute_loads(double dt);
  const std::vector<Load>& loads() const { return loads_; }
  const std::vector<FloorContact>& floor_contacts() const { return floor_; }

  double stable_dt() const { return stable_dt_; }
  double time() const { return time_; }
  long step_count() const { return step_count_; }
  double temperature() const { return env_.temperature_at(time_); }

  const LatticeTopology& topology() const { return topology_; }
  const SimConfig& config() const { return config_; }
  SimConfig& config() { return config_; }
  const Environment& environment() const { return env_; }
  Environment& environment() { return env_; }

  std::span<const VoxelState> states() const { return states_; }
  std::span<VoxelState> states() { return states_; }
  const Vec3& nominal_position(int voxel) const { return nominal_[voxel]; }

  /// Current contact radius of a voxel (half the lattice pitch, scaled by
  /// its thermal expansion).
  double contact_radius(int voxel) const;
  double contact_radius(int voxel, double temp_delta) const;
  double floor_stiffness(int voxel) const { return floor_stiffness_[voxel]; }

  const CollisionPairList& collision_pairs() const { return pairs_; }
  long pair_rebuilds() const { return pair_rebuilds_; }

  Vec3 total_linear_momentum() const;
  double total_abs_momentum() const;
  double kinetic_energy() const;
  double max_displacement() const;
  /// Largest |z| displacement from the nominal lattice position.
  double max_deflection() const;
  int active_voxel_count() const;

 private:
  void import(const VoxelObject& object);
  void update_pairs();
  void check_finite() const;

  Environment env_;
  SimConfig config_;
  LatticeTopology topology_;
  std::vector<VoxelState> states_;
  std::vector<Vec3> nominal_;
  std::vector<const MaterialDef*> material_;
  std::vector<MaterialDef> palette_;
  std::vector<double> floor_stiffness_;   // E * l per voxel, 0 without a floor
  std::vector<double> contact_k_;         // E * l per voxel
  std::vector<double> radius_;            // contact radius at the current step
  std::vector<double> ground_k_;          // stiffest attached translational stiffness
  std::vector<double> ground_k_rot_;      // stiffest attached rotational stiffness
  std::vector<Load> loads_;
  std::vector<FloorContact> floor_;
  CollisionPairList pairs_;
  double max_contact_radius_ = 0.0;
  double stable_dt_ = 0.0;
  double time_ = 0.0;
  long step_count_ = 0;
  long pair_rebuilds_ = 0;
  bool pairs_valid_ = false;
  bool pairs_rebuilt_this_step_ = false;
  int active_contacts_ = 0;
};

}  // namespace voxsim

#pragma once

#include "voxsim/bonds.hpp"
#include "voxsim/config.hpp"
#include "voxsim/dynamics.hpp"

#include <span>
#include <vector>

namespace voxsim {

/// Floor (z = 0) interaction of one voxel for one step.
struct FloorContact {
  bool in_contact = false;
  double penetration = 0.0;
  double normal_force = 0.0;      // +z, never negative
  Vec3 friction = Vec3::Zero();   // lateral, z component zero
  bool latched = false;           // lateral motion pinned this step
};

struct FloorParams {
  double radius = 0.0;       // current contact radius of the voxel
  double stiffness = 0.0;    // penalty stiffness, E * l
  double mu_static = 0.0;
  double mu_dynamic = 0.0;
  double zeta = 0.0;         // normal damping ratio
};

/// Penalty normal force plus Coulomb stick-slip friction.
///
/// applied_force is the sum of every other load on the voxel this step; its
/// lateral part is what static friction must resist. A latched voxel stays
/// latched while |F_l| <= mu_s F_n. A sliding voxel gets kinetic friction
/// mu_d F_n against its lateral velocity, and is halted (and latched) once
/// |V_l| <= F_n mu_d dt / m while static friction can hold it.
FloorContact floor_response(const VoxelState& state, const FloorParams& params, const Vec3& applied_force,
                            double dt);

struct CollisionPair {
  int a = 0;
  int b = 0;
  bool operator==(const CollisionPair&) const = default;
  auto operator<=>(const CollisionPair&) const = default;
};

/// Candidate self-collision pairs plus the motion budget spent since the
/// last rebuild. The list is complete while the budget stays below half
/// the horizon.
struct CollisionPairList {
  std::vector<CollisionPair> pairs;  // sorted, a < b
  double motion_budget = 0.0;
  double horizon = 0.0;

  /// Adds max_speed * dt to the budget; returns true once it reaches
  /// horizon / 2 (the list must be rebuilt before the next step).
  bool accumulate_motion(double max_speed, double dt);
  bool stale() const { return motion_budget >= 0.5 * horizon; }
};

bool scheme_uses_horizon(CollisionScheme scheme);
bool scheme_surface_only(CollisionScheme scheme);

/// All non-excluded pairs closer than 2 * max_radius + horizon. Surface-only
/// schemes consider surface voxels only. Resets the motion budget.
CollisionPairList rebuild_pairs(std::span<const VoxelState> states, const LatticeTopology& topology,
                                CollisionScheme scheme, double max_radius, double horizon);

struct ContactLoads {
  double overlap = 0.0;
  Vec3 force_a = Vec3::Zero();
  Vec3 force_b = Vec3::Zero();
};

struct CollisionParams {
  double radius_a = 0.0;
  double radius_b = 0.0;
  double stiffness_a = 0.0;  // E_i * l
  double stiffness_b = 0.0;
  double zeta = 0.0;
};

/// Linear penalty spring along the center line with stiffness
/// 2 k_a k_b / (k_a + k_b), plus damping of the relative normal velocity at
/// zeta times the critical value for the pair's reduced mass. The normal
/// force never pulls the voxels together. Zero when not overlapping.
ContactLoads collision_response(const VoxelState& a, const VoxelState& b, const CollisionParams& params);

}  // namespace voxsim

#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace voxsim {

/// Self-collision broad phase. "All" checks every voxel, "Surf" only voxels
/// with an exposed face. "Every" rebuilds the candidate list each step,
/// "Horizon" only once the motion budget is spent.
enum class CollisionScheme { AllEvery, SurfEvery, AllHorizon, SurfHorizon };

std::string_view to_string(CollisionScheme scheme);
std::optional<CollisionScheme> parse_collision_scheme(std::string_view text);

struct SimConfig {
  double dt_safety = 1.0;
  double zeta_bond = 1.0;
  // Rotational part of the bond damping; follows zeta_bond when unset.
  std::optional<double> zeta_bond_rotation;
  double zeta_ground = 0.0;
  double zeta_collision = 0.0;
  double horizon_voxels = 2.0;
  CollisionScheme collision_scheme = CollisionScheme::SurfHorizon;
  bool self_collision = false;
  // Timestep used when nothing in the scene bounds it (no bonds, no floor).
  double fallback_dt = 1e-4;

  double bond_rotation_ratio() const { return zeta_bond_rotation.value_or(zeta_bond); }

  /// Throws ModelError on out-of-range values.
  void validate() const;

  bool operator==(const SimConfig&) const = default;
};

}  // namespace voxsim

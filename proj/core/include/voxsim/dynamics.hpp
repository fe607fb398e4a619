#pragma once

#include "voxsim/bonds.hpp"
#include "voxsim/config.hpp"

#include <span>

namespace voxsim {

/// Dynamic state of one voxel plus the per-voxel constants the integrator
/// needs. Orientation is a unit quaternion (body to world).
struct VoxelState {
  Vec3 position = Vec3::Zero();
  Quat orientation = Quat::Identity();
  Vec3 linear_momentum = Vec3::Zero();
  Vec3 angular_momentum = Vec3::Zero();
  Vec3 ext_force = Vec3::Zero();
  bool friction_latched = false;
  bool fixed = false;
  double mass = 1.0;
  double inertia = 1.0;

  Vec3 velocity() const { return linear_momentum / mass; }
  Vec3 angular_velocity() const { return angular_momentum / inertia; }
};

/// Forces and moments a single bond applies to its two voxels, world frame.
struct BondLoads {
  Vec3 force_a = Vec3::Zero();
  Vec3 moment_a = Vec3::Zero();
  Vec3 force_b = Vec3::Zero();
  Vec3 moment_b = Vec3::Zero();
};

/// Rest length scaled by the mean expansion of the two materials.
/// Throws SimulationFault if the result is not positive.
double thermal_rest_length(const Bond& bond, double temp_delta);

/// Elastic beam loads on both voxels.
///
/// The element is evaluated co-rotationally: loads are computed in a frame
/// whose x axis runs along the current chord from a to b, with voxel a's
/// bond frame (its orientation composed with the lattice-axis rotation) as
/// the reference for twist. Node rotations relative to that frame drive the
/// Hermitian bending terms; the transverse shear is recovered from moment
/// balance over the current chord, so
///   force_a == -force_b  and  moment_a + moment_b + (D_b - D_a) x force_b == 0
/// hold for any configuration. To first order this is the standard element
/// with voxel a held at the origin.
///
/// temp_delta is T_current - T_reference.
BondLoads bond_loads(const Bond& bond, const VoxelState& a, const VoxelState& b, double temp_delta);

/// Local viscous damping between the two voxels of a bond. Rigid translation
/// and rigid rotation of the pair are subtracted first, so only deformation
/// rates are damped. Coefficients are critical for half the smaller mass /
/// inertia of the pair against a1 and b3. Forces and moments come in exactly
/// opposite pairs, but the force pair is not moment balanced, so damping can
/// leave a free body with a small rigid spin.
BondLoads bond_damping(const Bond& bond, const VoxelState& a, const VoxelState& b, double zeta);
/// Separate ratios for the translational and rotational terms.
BondLoads bond_damping(const Bond& bond, const VoxelState& a, const VoxelState& b, double zeta,
                       double zeta_rotation);

/// Per-voxel accumulated load for one step.
struct Load {
  Vec3 force = Vec3::Zero();
  Vec3 moment = Vec3::Zero();
};

/// Largest natural frequency sqrt(k/m) over all bonds and, when the floor is
/// enabled, over the floor penalty springs. Zero when neither exists.
double max_natural_frequency(const LatticeTopology& topology, std::span<const VoxelState> states,
                             std::span<const double> floor_stiffness);

/// dt = dt_safety / (2 pi omega_max), or config.fallback_dt if omega_max is 0.
double stable_timestep(const LatticeTopology& topology, std::span<const VoxelState> states,
                       std::span<const double> floor_stiffness, const SimConfig& config);

/// Semi-implicit Euler update of one voxel: momentum first, then position
/// from the new momentum. The orientation is advanced by the rotation
/// vector omega*dt. Fixed voxels are left untouched; latched voxels keep
/// their lateral (x, y) position.
void integrate(VoxelState& state, const Load& load, double dt);

}  // namespace voxsim

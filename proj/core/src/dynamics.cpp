#include "voxsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace voxsim {
namespace {

// Rotations taking +x onto each lattice axis.
const Quat kAxisRotation[3] = {
    Quat::Identity(),
    Quat(std::sqrt(0.5), 0.0, 0.0, std::sqrt(0.5)),   // +90 deg about z: x -> y
    Quat(std::sqrt(0.5), 0.0, -std::sqrt(0.5), 0.0),  // -90 deg about y: x -> z
};

// Rotation vector (axis * angle) of a unit quaternion, angle in [0, pi].
Vec3 rotation_vector(const Quat& q) {
  const double sign = q.w() < 0.0 ? -1.0 : 1.0;
  const Vec3 v = sign * q.vec();
  const double w = sign * q.w();
  const double s = v.norm();
  if (s < 1e-12) return (2.0 / w) * v;
  if (s < 0.05 * w) {
    // atan(x) / x by its series; seven terms reach double precision here.
    const double x2 = (s / w) * (s / w);
    const double t = 1.0 - x2 * (1.0 / 3 - x2 * (1.0 / 5 - x2 * (1.0 / 7 - x2 * (1.0 / 9 - x2 * (1.0 / 11 - x2 / 13)))));
    return v * (2.0 * t / w);
  }
  return v * (2.0 * std::atan2(s, w) / s);
}

Quat rotation_from_vector(const Vec3& r) {
  const double angle = r.norm();
  if (angle < 1e-12) return Quat(1.0, 0.5 * r.x(), 0.5 * r.y(), 0.5 * r.z()).normalized();
  const double half = 0.5 * angle;
  const Vec3 v = r * (std::sin(half) / angle);
  return Quat(std::cos(half), v.x(), v.y(), v.z());
}

}  // namespace

double thermal_rest_length(const Bond& bond, double temp_delta) {
  const double length = bond.rest_length * (1.0 + bond.cte_mean * temp_delta);
  if (!(length > 0.0)) {
    std::ostringstream msg;
    msg << "bond " << bond.voxel_a << "-" << bond.voxel_b << " rest length " << length
        << " is not positive at temperature offset " << temp_delta;
    throw SimulationFault(msg.str());
  }
  return length;
}

BondLoads bond_loads(const Bond& bond, const VoxelState& a, const VoxelState& b, double temp_delta) {
  const double rest = thermal_rest_length(bond, temp_delta);
  const Quat& axis_rot = kAxisRotation[static_cast<int>(bond.axis)];
  const Quat frame_a = a.orientation * axis_rot;
  const Quat frame_b = b.orientation * axis_rot;

  // Everything below is in voxel a's bond frame, where the undeformed bond
  // runs from the origin along +x.
  const Vec3 chord = frame_a.conjugate() * (b.position - a.position);
  const double length = chord.norm();
  const Vec3 u = chord / length;

  // Chord frame: shortest arc taking +x onto the chord direction. It carries
  // no twist relative to a, so a's rotation in it is pure bending.
  Quat to_chord(1.0 + u.x(), 0.0, -u.z(), u.y());
  if (to_chord.squaredNorm() < 1e-24) to_chord = Quat(0.0, 0.0, 0.0, 1.0);  // fully inverted bond
  to_chord.normalize();

  const Vec3 theta_a = rotation_vector(to_chord.conjugate());
  const Vec3 theta_b = rotation_vector(to_chord.conjugate() * (frame_a.conjugate() * frame_b));

  const BeamConstants& k = bond.k;
  const double tension = k.a1 * (length - rest);
  const double torque = k.a2 * (theta_b.x() - theta_a.x());

  const Vec3 moment_a(torque, -(2.0 * k.b3 * theta_a.y() + k.b3 * theta_b.y()),
                      -(2.0 * k.b3 * theta_a.z() + k.b3 * theta_b.z()));
  const Vec3 moment_b(-torque, -(k.b3 * theta_a.y() + 2.0 * k.b3 * theta_b.y()),
                      -(k.b3 * theta_a.z() + 2.0 * k.b3 * theta_b.z()));
  // Shear balances the end moments over the current chord.
  const Vec3 force_b(-tension, -(moment_a.z() + moment_b.z()) / length, (moment_a.y() + moment_b.y()) / length);

  const Quat to_world = frame_a * to_chord;
  BondLoads out;
  out.force_b = to_world * force_b;
  out.force_a = -out.force_b;
  out.moment_a = to_world * moment_a;
  out.moment_b = to_world * moment_b;
  return out;
}

BondLoads bond_damping(const Bond& bond, const VoxelState& a, const VoxelState& b, double zeta) {
  return bond_damping(bond, a, b, zeta, zeta);
}

BondLoads bond_damping(const Bond& bond, const VoxelState& a, const VoxelState& b, double zeta,
                       double zeta_rotation) {
  BondLoads out;
  if (zeta == 0.0 && zeta_rotation == 0.0) return out;
  const Vec3 va = a.velocity(), vb = b.velocity();
  const Vec3 wa = a.angular_velocity(), wb = b.angular_velocity();
  const Vec3 v_avg = 0.5 * (va + vb);
  const Vec3 d_avg = 0.5 * (a.position + b.position);
  const Vec3 w_avg = 0.5 * (wa + wb);

  // Velocity of b relative to the rigid motion of the pair.
  const Vec3 v_rel = (vb - v_avg) + (b.position - d_avg).cross(w_avg);
  const Vec3 w_rel = wb - w_avg;

  // Coefficients are critical for the relative mode of a bond between two
  // copies of the lighter voxel (half its mass, antisymmetric bending
  // stiffness b3). Larger values make solid blocks unstable at zeta 1 and
  // the full stable timestep.
  const double m = 0.5 * std::min(a.mass, b.mass);
  const double inertia = 0.5 * std::min(a.inertia, b.inertia);
  const double c = 2.0 * zeta * std::sqrt(m * bond.k.a1);
  const double c_rot = 2.0 * zeta_rotation * std::sqrt(inertia * bond.k.b3);

  out.force_b = -c * v_rel;
  out.force_a = -out.force_b;
  out.moment_b = -c_rot * w_rel;
  out.moment_a = -out.moment_b;
  return out;
}

double max_natural_frequency(const LatticeTopology& topology, std::span<const VoxelState> states,
                             std::span<const double> floor_stiffness) {
  double omega_sq = 0.0;
  for (const Bond& bond : topology.bonds) {
    const double m = std::min(states[bond.voxel_a].mass, states[bond.voxel_b].mass);
    omega_sq = std::max(omega_sq, bond.max_translational_stiffness() / m);
  }
  for (std::size_t v = 0; v < floor_stiffness.size(); ++v)
    omega_sq = std::max(omega_sq, floor_stiffness[v] / states[v].mass);
  return std::sqrt(omega_sq);
}

double stable_timestep(const LatticeTopology& topology, std::span<const VoxelState> states,
                       std::span<const double> floor_stiffness, const SimConfig& config) {
  const double omega = max_natural_frequency(topology, states, floor_stiffness);
  if (omega == 0.0) return config.fallback_dt;
  return config.dt_safety / (2.0 * M_PI * omega);
}

void integrate(VoxelState& s, const Load& load, double dt) {
  if (s.fixed) return;
  s.linear_momentum += load.force * dt;
  if (s.friction_latched) {
    s.linear_momentum.x() = 0.0;
    s.linear_momentum.y() = 0.0;
  }
  s.position += s.linear_momentum * (dt / s.mass);

  s.angular_momentum += load.moment * dt;
  const Vec3 spin = s.angular_momentum * (dt / s.inertia);
  s.orientation = rotation_from_vector(spin) * s.orientation;
  s.orientation.normalize();
}

}  // namespace voxsim

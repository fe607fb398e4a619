#include "voxsim/contact.hpp"

#include "voxsim/log.hpp"

#include <algorithm>
#include <cmath>

namespace voxsim {

FloorContact floor_response(const VoxelState& state, const FloorParams& params, const Vec3& applied_force,
                            double dt) {
  FloorContact out;
  const double penetration = params.radius - state.position.z();
  if (penetration <= 0.0) return out;

  out.in_contact = true;
  out.penetration = penetration;
  const Vec3 velocity = state.velocity();
  const double damping = 2.0 * params.zeta * std::sqrt(state.mass * params.stiffness);
  out.normal_force = std::max(0.0, params.stiffness * penetration - damping * velocity.z());

  const Vec3 lateral_force(applied_force.x(), applied_force.y(), 0.0);
  const Vec3 lateral_velocity(velocity.x(), velocity.y(), 0.0);
  const double f_lateral = lateral_force.norm();
  const double static_limit = params.mu_static * out.normal_force;
  const double kinetic = params.mu_dynamic * out.normal_force;

  auto kinetic_against = [&](const Vec3& dir) {
    const double n = dir.norm();
    return n > 0.0 ? Vec3(-kinetic * dir / n) : Vec3(Vec3::Zero());
  };

  if (state.friction_latched) {
    if (f_lateral <= static_limit) {
      out.latched = true;
      out.friction = -lateral_force;
    } else {
      out.friction = kinetic_against(lateral_force);
    }
    return out;
  }

  const double speed = lateral_velocity.norm();
  if (speed <= kinetic * dt / state.mass && f_lateral <= static_limit) {
    out.latched = true;
    out.friction = -lateral_force;
  } else if (speed > 0.0) {
    out.friction = kinetic_against(lateral_velocity);
  } else {
    out.friction = kinetic_against(lateral_force);
  }
  return out;
}

bool CollisionPairList::accumulate_motion(double max_speed, double dt) {
  motion_budget += max_speed * dt;
  return stale();
}

bool scheme_uses_horizon(CollisionScheme scheme) {
  return scheme == CollisionScheme::AllHorizon || scheme == CollisionScheme::SurfHorizon;
}

bool scheme_surface_only(CollisionScheme scheme) {
  return scheme == CollisionScheme::SurfEvery || scheme == CollisionScheme::SurfHorizon;
}

CollisionPairList rebuild_pairs(std::span<const VoxelState> states, const LatticeTopology& topology,
                                CollisionScheme scheme, double max_radius, double horizon) {
  CollisionPairList list;
  list.horizon = horizon;
  const double cutoff = 2.0 * max_radius + horizon;
  const double cutoff_sq = cutoff * cutoff;

  std::vector<int> all;
  const std::vector<int>* candidates = &topology.surface_voxels;
  if (!scheme_surface_only(scheme)) {
    all.resize(states.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    candidates = &all;
  }

  const auto& ids = *candidates;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const Vec3& pi = states[ids[i]].position;
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if ((states[ids[j]].position - pi).squaredNorm() >= cutoff_sq) continue;
      if (topology.excluded(ids[i], ids[j])) continue;
      list.pairs.push_back({ids[i], ids[j]});
    }
  }
  std::sort(list.pairs.begin(), list.pairs.end());
  return list;
}

ContactLoads collision_response(const VoxelState& a, const VoxelState& b, const CollisionParams& params) {
  ContactLoads out;
  Vec3 delta = b.position - a.position;
  const double dist = delta.norm();
  const double overlap = params.radius_a + params.radius_b - dist;
  if (overlap <= 0.0) return out;
  out.overlap = overlap;

  Vec3 normal;
  if (dist > 0.0) {
    normal = delta / dist;
  } else {
    warn("coincident voxel centers in collision; pushing apart along +z");
    normal = Vec3::UnitZ();
  }
  const double k = 2.0 * params.stiffness_a * params.stiffness_b / (params.stiffness_a + params.stiffness_b);
  const double reduced_mass = a.mass * b.mass / (a.mass + b.mass);
  const double c = 2.0 * params.zeta * std::sqrt(reduced_mass * k);
  const double closing = (a.velocity() - b.velocity()).dot(normal);
  const double push = std::max(0.0, k * overlap + c * closing);
  out.force_b = push * normal;
  out.force_a = -out.force_b;
  return out;
}

}  // namespace voxsim

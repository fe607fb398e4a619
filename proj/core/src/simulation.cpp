#include "voxsim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace voxsim {

Simulation::Simulation(const Scene& scene) : Simulation(scene.object, scene.environment, scene.sim) {}

Simulation::Simulation(const VoxelObject& object, const Environment& env, const SimConfig& config)
    : env_(env), config_(config) {
  env_.validate();
  config_.validate();
  import(object);
}

void Simulation::import(const VoxelObject& object) {
  topology_ = build_topology(object);
  palette_ = object.palette().materials();
  const ResolvedRegions regions = resolve_regions(object, env_);
  const double l = topology_.lattice_dim;
  const int n = topology_.voxel_count();

  states_.resize(static_cast<std::size_t>(n));
  nominal_.resize(static_cast<std::size_t>(n));
  material_.resize(static_cast<std::size_t>(n));
  floor_stiffness_.assign(static_cast<std::size_t>(n), 0.0);
  contact_k_.assign(static_cast<std::size_t>(n), 0.0);
  radius_.assign(static_cast<std::size_t>(n), 0.5 * l);
  ground_k_.assign(static_cast<std::size_t>(n), 0.0);
  ground_k_rot_.assign(static_cast<std::size_t>(n), 0.0);

  double max_expansion = 0.0;
  for (int v = 0; v < n; ++v) {
    const LatticeVoxel& lv = topology_.voxels[v];
    const MaterialDef& mat = palette_[static_cast<std::size_t>(lv.material - 1)];
    material_[v] = &mat;
    VoxelState& s = states_[v];
    nominal_[v] = object.grid().nominal_position(lv.cell.x, lv.cell.y, lv.cell.z);
    s.position = nominal_[v];
    s.mass = voxel_mass(mat, l);
    s.inertia = voxel_inertia(s.mass, l);
    s.fixed = regions.fixed[v];
    s.ext_force = regions.ext_force[v];
    const double k_self = mat.elastic_modulus * l;
    contact_k_[v] = k_self;
    ground_k_[v] = k_self;
    // Rotational analog of E*l for an unbonded voxel: 4EI/l with I = l^4/12.
    ground_k_rot_[v] = mat.elastic_modulus * l * l * l / 3.0;
    if (env_.floor_enabled) floor_stiffness_[v] = k_self;
    max_expansion = std::max(max_expansion, std::abs(mat.cte) * std::abs(env_.temp_amplitude));
  }
  for (int v = 0; v < n; ++v) {
    if (topology_.voxel_bonds[v].empty()) continue;
    double k = 0.0, k_rot = 0.0;
    for (int b : topology_.voxel_bonds[v]) {
      k = std::max(k, topology_.bonds[b].max_translational_stiffness());
      k_rot = std::max(k_rot, topology_.bonds[b].rotational_stiffness());
    }
    ground_k_[v] = k;
    ground_k_rot_[v] = k_rot;
  }
  max_contact_radius_ = 0.5 * l * (1.0 + max_expansion);

  loads_.assign(static_cast<std::size_t>(n), Load{});
  floor_.assign(static_cast<std::size_t>(n), FloorContact{});
  // Bond constants and masses never change, so the bound is fixed at import.
  stable_dt_ = stable_timestep(topology_, states_, floor_stiffness_, config_);
}

double Simulation::contact_radius(int voxel) const {
  return contact_radius(voxel, temperature() - env_.temp_base);
}

double Simulation::contact_radius(int voxel, double temp_delta) const {
  const double expansion = 1.0 + material_[voxel]->cte * temp_delta;
  return std::max(0.0, 0.5 * topology_.lattice_dim * expansion);
}

void Simulation::update_pairs() {
  pairs_rebuilt_this_step_ = false;
  const bool horizon = scheme_uses_horizon(config_.collision_scheme);
  if (horizon && pairs_valid_) return;
  const double h = horizon ? config_.horizon_voxels * topology_.lattice_dim : 0.0;
  pairs_ = rebuild_pairs(states_, topology_, config_.collision_scheme, max_contact_radius_, h);
  pairs_valid_ = true;
  pairs_rebuilt_this_step_ = true;
  ++pair_rebuilds_;
}

void Simulation::compute_loads(double dt) {
  const int n = topology_.voxel_count();
  const double temp_delta = temperature() - env_.temp_base;
  std::fill(loads_.begin(), loads_.end(), Load{});

  for (const Bond& bond : topology_.bonds) {
    const VoxelState& a = states_[bond.voxel_a];
    const VoxelState& b = states_[bond.voxel_b];
    BondLoads l = bond_loads(bond, a, b, temp_delta);
    if (config_.zeta_bond > 0.0 || config_.bond_rotation_ratio() > 0.0) {
      const BondLoads d = bond_damping(bond, a, b, config_.zeta_bond, config_.bond_rotation_ratio());
      l.force_a += d.force_a;
      l.force_b += d.force_b;
      l.moment_a += d.moment_a;
      l.moment_b += d.moment_b;
    }
    loads_[bond.voxel_a].force += l.force_a;
    loads_[bond.voxel_a].moment += l.moment_a;
    loads_[bond.voxel_b].force += l.force_b;
    loads_[bond.voxel_b].moment += l.moment_b;
  }

  const double g = env_.gravity_enabled ? env_.gravity : 0.0;
  for (int v = 0; v < n; ++v) {
    const VoxelState& s = states_[v];
    Load& load = loads_[v];
    load.force.z() -= s.mass * g;
    load.force += s.ext_force;
    if (config_.zeta_ground > 0.0) {
      load.force -= 2.0 * config_.zeta_ground * std::sqrt(s.mass * ground_k_[v]) * s.velocity();
      load.moment -= 2.0 * config_.zeta_ground * std::sqrt(s.inertia * ground_k_rot_[v]) * s.angular_velocity();
    }
  }

  if (config_.self_collision || env_.floor_enabled)
    for (int v = 0; v < n; ++v) radius_[v] = contact_radius(v, temp_delta);

  active_contacts_ = 0;
  if (config_.self_collision) {
    update_pairs();
    for (const CollisionPair& p : pairs_.pairs) {
      const double reach = radius_[p.a] + radius_[p.b];
      if ((states_[p.b].position - states_[p.a].position).squaredNorm() >= reach * reach) continue;
      CollisionParams cp;
      cp.radius_a = radius_[p.a];
      cp.radius_b = radius_[p.b];
      cp.stiffness_a = contact_k_[p.a];
      cp.stiffness_b = contact_k_[p.b];
      cp.zeta = config_.zeta_collision;
      const ContactLoads c = collision_response(states_[p.a], states_[p.b], cp);
      if (c.overlap <= 0.0) continue;
      ++active_contacts_;
      loads_[p.a].force += c.force_a;
      loads_[p.b].force += c.force_b;
    }
  }

  if (env_.floor_enabled) {
    for (int v = 0; v < n; ++v) {
      FloorParams fp;
      fp.radius = radius_[v];
      fp.stiffness = floor_stiffness_[v];
      fp.mu_static = material_[v]->mu_static;
      fp.mu_dynamic = material_[v]->mu_dynamic;
      fp.zeta = config_.zeta_collision;
      floor_[v] = floor_response(states_[v], fp, loads_[v].force, dt);
      loads_[v].force.z() += floor_[v].normal_force;
      loads_[v].force += floor_[v].friction;
    }
  }
}

StepStats Simulation::step() { return step(stable_dt_); }

StepStats Simulation::step(double dt) {
  compute_loads(dt);
  const int n = topology_.voxel_count();
  for (int v = 0; v < n; ++v) {
    VoxelState& s = states_[v];
    if (s.fixed) continue;
    s.friction_latched = env_.floor_enabled && floor_[v].latched;
    integrate(s, loads_[v], dt);
  }
  ++step_count_;
  check_finite();
  time_ += dt;

  StepStats stats;
  stats.step = step_count_;
  stats.time = time_;
  stats.dt = dt;
  stats.temperature = temperature();
  for (int v = 0; v < n; ++v) {
    const VoxelState& s = states_[v];
    if (s.fixed) continue;
    stats.max_speed = std::max(stats.max_speed, s.linear_momentum.norm() / s.mass);
    stats.kinetic_energy += 0.5 * s.linear_momentum.squaredNorm() / s.mass +
                            0.5 * s.angular_momentum.squaredNorm() / s.inertia;
    stats.max_displacement = std::max(stats.max_displacement, (s.position - nominal_[v]).norm());
  }
  if (config_.self_collision) {
    stats.pairs_rebuilt = pairs_rebuilt_this_step_;
    stats.candidate_pairs = static_cast<int>(pairs_.pairs.size());
    stats.active_contacts = active_contacts_;
    if (scheme_uses_horizon(config_.collision_scheme) && pairs_.accumulate_motion(stats.max_speed, dt))
      pairs_valid_ = false;
  }
  return stats;
}

void Simulation::check_finite() const {
  for (int v = 0; v < topology_.voxel_count(); ++v) {
    const VoxelState& s = states_[v];
    if (s.position.allFinite() && s.linear_momentum.allFinite() && s.angular_momentum.allFinite() &&
        s.orientation.coeffs().allFinite())
      continue;
    std::ostringstream msg;
    msg << "simulation diverged: voxel " << v << " has a non-finite state at step " << step_count_;
    throw DivergenceError(v, step_count_, msg.str());
  }
}

Vec3 Simulation::total_linear_momentum() const {
  Vec3 p = Vec3::Zero();
  for (const auto& s : states_) p += s.linear_momentum;
  return p;
}

double Simulation::total_abs_momentum() const {
  double sum = 0.0;
  for (const auto& s : states_) sum += s.linear_momentum.norm();
  return sum;
}

double Simulation::kinetic_energy() const {
  double e = 0.0;
  for (const auto& s : states_)
    e += 0.5 * s.linear_momentum.squaredNorm() / s.mass + 0.5 * s.angular_momentum.squaredNorm() / s.inertia;
  return e;
}

double Simulation::max_displacement() const {
  double d = 0.0;
  for (std::size_t v = 0; v < states_.size(); ++v) d = std::max(d, (states_[v].position - nominal_[v]).norm());
  return d;
}

double Simulation::max_deflection() const {
  double d = 0.0;
  for (std::size_t v = 0; v < states_.size(); ++v) d = std::max(d, std::abs(states_[v].position.z() - nominal_[v].z()));
  return d;
}

int Simulation::active_voxel_count() const {
  return static_cast<int>(std::count_if(states_.begin(), states_.end(), [](const VoxelState& s) { return !s.fixed; }));
}

}  // namespace voxsim

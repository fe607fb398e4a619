#include "voxsim/scenes.hpp"

#include "voxsim/oracle.hpp"

#include <stdexcept>

namespace voxsim::scenes {
namespace {

constexpr double kPitch = 0.001;

MaterialDef soft(const std::string& name = "Soft", double cte = 0.0) {
  MaterialDef m;
  m.name = name;
  m.elastic_modulus = 1e6;
  m.poisson_ratio = 0.3;
  m.density = 1000.0;
  m.cte = cte;
  return m;
}

}  // namespace

Scene thin_cantilever(double tip_force) {
  Scene s;
  s.object = VoxelObject(kPitch, 20, 1, 1);
  const int mat = s.object.add_material(soft());
  s.object.fill({0, 0, 0}, {20, 1, 1}, mat);
  s.environment.gravity_enabled = false;
  s.environment.add_fixed_region(Vec3(0, 0, 0), Vec3(0.05, 1, 1));
  s.environment.add_forced_region(Vec3(0.95, 0, 0), Vec3(0.05, 1, 1), Vec3(0, 0, -tip_force));
  s.sim.zeta_bond = 1.0;
  s.sim.zeta_ground = 0.002;
  return s;
}

Scene thick_cantilever(double tip_force) {
  Scene s;
  s.object = VoxelObject(kPitch, 10, 5, 5);
  const int mat = s.object.add_material(soft());
  s.object.fill({0, 0, 0}, {10, 5, 5}, mat);
  s.environment.gravity_enabled = false;
  s.environment.add_fixed_region(Vec3(0, 0, 0), Vec3(0.1, 1, 1));
  s.environment.add_forced_region(Vec3(0.9, 0, 0), Vec3(0.1, 1, 1), Vec3(0, 0, -tip_force));
  s.sim.zeta_bond = 1.0;
  s.sim.zeta_ground = 0.05;
  return s;
}

Scene appendix_cantilever() {
  Scene s;
  s.object = VoxelObject(kPitch, 5, 10, 5);
  MaterialDef m = soft("Material1");
  m.elastic_modulus = 10e6;
  const int mat = s.object.add_material(m);
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 10; ++y)
      for (int z = 0; z < 5; ++z) s.object.set_voxel(x, y, z, mat);
  s.environment.add_fixed_region(Vec3(0, 0, 0), Vec3(1.0, 0.01, 1.0));
  s.environment.add_forced_region(Vec3(0, 0.99, 0), Vec3(1.0, 0.01, 1.0), Vec3(0, 0, -1000.0));
  s.sim.zeta_ground = 0.013;
  return s;
}

double modal_beam_density(double f1) {
  const double area_moment = kPitch * kPitch * kPitch * kPitch / 12.0;
  const double m_bar = mass_per_length_for_first_mode(f1, 1e6, area_moment, 20 * kPitch);
  return m_bar / (kPitch * kPitch);
}

Scene modal_beam(double density) {
  Scene s = thin_cantilever(0.0);
  s.environment.regions.pop_back();
  MaterialDef m = s.object.palette().at(1);
  m.density = density;
  s.object = VoxelObject(kPitch, 20, 1, 1);
  const int mat = s.object.add_material(m);
  s.object.fill({0, 0, 0}, {20, 1, 1}, mat);
  s.sim.zeta_bond = 0.0;
  s.sim.zeta_bond_rotation = 0.01;
  s.sim.zeta_ground = 0.0;
  return s;
}

Scene clapper() {
  // x: outer+inner layer of the left arm | gap | inner+outer of the right
  // arm. z: two base rows, one actuated hinge row, then passive arm rows.
  constexpr int layer = 2, gap = 4, depth = 14, base_rows = 2, arm_rows = 15;
  constexpr int nx = 4 * layer + gap, nz = base_rows + arm_rows;
  Scene s;
  s.object = VoxelObject(kPitch, nx, depth, nz);
  const int passive = s.object.add_material(soft("Passive"));
  const int expand = s.object.add_material(soft("Expanding", 0.02));
  const int contract = s.object.add_material(soft("Contracting", -0.02));

  s.object.fill({0, 0, 0}, {nx, depth, base_rows}, passive);
  const int left_outer = 0, left_inner = layer, right_inner = 2 * layer + gap, right_outer = 3 * layer + gap;
  const int hinge = base_rows;
  s.object.fill({left_outer, 0, hinge}, {left_outer + layer, depth, hinge + 1}, expand);
  s.object.fill({left_inner, 0, hinge}, {left_inner + layer, depth, hinge + 1}, contract);
  s.object.fill({right_inner, 0, hinge}, {right_inner + layer, depth, hinge + 1}, contract);
  s.object.fill({right_outer, 0, hinge}, {right_outer + layer, depth, hinge + 1}, expand);
  s.object.fill({0, 0, hinge + 1}, {2 * layer, depth, nz}, passive);
  s.object.fill({right_inner, 0, hinge + 1}, {nx, depth, nz}, passive);

  Environment& e = s.environment;
  e.gravity_enabled = true;
  e.floor_enabled = true;
  e.temp_base = 25.0;
  e.temp_amplitude = 30.0;
  e.temp_period = 0.02;
  e.add_fixed_region(Vec3(0, 0, 0), Vec3(1, 1, 0.5 / nz));

  s.sim.zeta_bond = 1.0;
  s.sim.zeta_ground = 0.02;
  s.sim.zeta_collision = 1.0;
  s.sim.self_collision = true;
  s.sim.collision_scheme = CollisionScheme::SurfHorizon;
  return s;
}

Scene cube(int n) {
  Scene s;
  s.object = VoxelObject(kPitch, n, n, n);
  const int mat = s.object.add_material(soft());
  s.object.fill({0, 0, 0}, {n, n, n}, mat);
  s.environment.gravity_enabled = false;
  s.environment.floor_enabled = false;
  return s;
}

Scene friction_block() {
  Scene s;
  s.object = VoxelObject(kPitch, 2, 2, 1);
  MaterialDef m = soft("Block");
  m.mu_static = 0.6;
  m.mu_dynamic = 0.4;
  const int mat = s.object.add_material(m);
  s.object.fill({0, 0, 0}, {2, 2, 1}, mat);
  s.environment.gravity_enabled = true;
  s.environment.floor_enabled = true;
  s.sim.zeta_bond = 1.0;
  s.sim.zeta_collision = 1.0;
  return s;
}

Scene single_voxel() {
  Scene s;
  s.object = VoxelObject(kPitch, 1, 1, 1);
  const int mat = s.object.add_material(soft());
  s.object.set_voxel(0, 0, 0, mat);
  return s;
}

std::vector<std::string> names() {
  return {"thin-cantilever", "thick-cantilever", "appendix-cantilever", "modal-beam", "clapper",
          "cube",            "friction-block",   "single-voxel"};
}

Scene by_name(const std::string& name) {
  if (name == "thin-cantilever") return thin_cantilever();
  if (name == "thick-cantilever") return thick_cantilever();
  if (name == "appendix-cantilever") return appendix_cantilever();
  if (name == "modal-beam") return modal_beam(modal_beam_density());
  if (name == "clapper") return clapper();
  if (name == "cube") return cube(16);
  if (name == "friction-block") return friction_block();
  if (name == "single-voxel") return single_voxel();
  std::string known;
  for (const auto& n : names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown scene '" + name + "' (available: " + known + ")");
}

}  // namespace voxsim::scenes

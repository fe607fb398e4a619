#pragma once

#include "voxsim/config.hpp"
#include "voxsim/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace voxsim {

/// Everything needed to start a simulation.
struct Scene {
  VoxelObject object;
  Environment environment;
  SimConfig sim;

  bool operator==(const Scene&) const = default;
};

/// Parses a scene document. Throws SceneError naming the offending field.
///
/// Layout (all SI, temperatures in Celsius):
///   lattice_dim   number
///   dims          [nx, ny, nz]
///   palette       [{name, elastic_modulus, poisson_ratio, density, cte,
///                   mu_static, mu_dynamic, color}]
///   voxels        nx*ny*nz material indices, x fastest then y then z
///   regions       [{kind: "fixed"|"forced", origin, size, force}]
///   environment   {gravity_enabled, gravity, floor_enabled, temp_base,
///                  temp_amplitude, temp_period}
///   sim           {dt_safety, zeta_bond, zeta_ground, zeta_collision,
///                  horizon_voxels, collision_scheme, self_collision,
///                  fallback_dt, zeta_bond_rotation (optional)}
/// Missing palette/environment/sim fields take their defaults.
Scene load_scene(std::string_view text);
std::string save_scene(const Scene& scene);

Scene load_scene_file(const std::filesystem::path& path);
void save_scene_file(const Scene& scene, const std::filesystem::path& path);

}  // namespace voxsim

#pragma once

#include "voxsim/model.hpp"

#include <vector>

namespace voxsim {

enum class Axis { X = 0, Y = 1, Z = 2 };

/// Effective properties of a bond spanning two materials: the two halves act
/// as springs in series.
struct CompositeProperties {
  double elastic_modulus = 0.0;
  double shear_modulus = 0.0;
  double poisson_ratio = 0.0;
};

CompositeProperties composite_properties(const MaterialDef& m1, const MaterialDef& m2);

/// Stiffness terms of a 12-DOF Bernoulli-Euler beam with a square l x l
/// section and length l (I = l^4/12, J = l^4/6).
///   a1 axial [N/m], a2 torsional [N m/rad], b1 shear [N/m],
///   b2 shear-bending coupling [N/rad], b3 bending [N m/rad]
struct BeamConstants {
  double a1 = 0.0;
  double a2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
};

BeamConstants beam_constants(double elastic_modulus, double shear_modulus, double length);

/// Beam element between two face-adjacent voxels. voxel_b sits one lattice
/// step along +axis from voxel_a.
struct Bond {
  int voxel_a = 0;
  int voxel_b = 0;
  Axis axis = Axis::X;
  double rest_length = 0.0;
  CompositeProperties composite;
  double cte_mean = 0.0;
  BeamConstants k;

  /// Largest translational stiffness, used for timestep and damping bounds.
  double max_translational_stiffness() const { return k.a1 > k.b1 ? k.a1 : k.b1; }
  /// Diagonal rotational stiffness 4EI/l.
  double rotational_stiffness() const { return 2.0 * k.b3; }
};

struct LatticeVoxel {
  LatticeIndex cell;
  int material = 0;
};

/// Immutable connectivity of an object, built once at import.
struct LatticeTopology {
  double lattice_dim = 0.0;
  std::vector<LatticeVoxel> voxels;       // filled cells, x-fastest order
  std::vector<Bond> bonds;                // sorted by (voxel_a, axis)
  std::vector<std::vector<int>> voxel_bonds;  // bond ids touching each voxel
  std::vector<int> surface_voxels;        // ascending ids
  std::vector<bool> is_surface;
  /// Per voxel: sorted ids of other voxels within lattice Manhattan
  /// distance 3. Pairs listed here never generate self-collision contacts.
  std::vector<std::vector<int>> near_exclusion;

  int voxel_count() const { return static_cast<int>(voxels.size()); }
  bool excluded(int a, int b) const;
};

inline constexpr int kNearExclusionManhattan = 3;

LatticeTopology build_topology(const VoxelObject& object);

}  // namespace voxsim

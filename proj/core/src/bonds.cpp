#include "voxsim/bonds.hpp"

#include <algorithm>
#include <cstdlib>

namespace voxsim {

CompositeProperties composite_properties(const MaterialDef& m1, const MaterialDef& m2) {
  const double e1 = m1.elastic_modulus, e2 = m2.elastic_modulus;
  const double g1 = m1.shear_modulus(), g2 = m2.shear_modulus();
  CompositeProperties c;
  c.elastic_modulus = 2.0 * e1 * e2 / (e1 + e2);
  c.shear_modulus = 2.0 * g1 * g2 / (g1 + g2);
  c.poisson_ratio = c.elastic_modulus / (2.0 * c.shear_modulus) - 1.0;
  return c;
}

BeamConstants beam_constants(double elastic_modulus, double shear_modulus, double length) {
  const double l = length;
  const double area = l * l;
  const double second_moment = l * l * l * l / 12.0;
  const double torsion = l * l * l * l / 6.0;
  BeamConstants k;
  k.a1 = elastic_modulus * area / l;
  k.a2 = shear_modulus * torsion / l;
  k.b1 = 12.0 * elastic_modulus * second_moment / (l * l * l);
  k.b2 = 6.0 * elastic_modulus * second_moment / (l * l);
  k.b3 = 2.0 * elastic_modulus * second_moment / l;
  return k;
}

bool LatticeTopology::excluded(int a, int b) const {
  const auto& list = near_exclusion[static_cast<std::size_t>(a)];
  return std::binary_search(list.begin(), list.end(), b);
}

LatticeTopology build_topology(const VoxelObject& object) {
  const VoxelGrid& g = object.grid();
  const Palette& palette = object.palette();
  LatticeTopology topo;
  topo.lattice_dim = g.lattice_dim();

  std::vector<int> id_of(g.cell_count(), -1);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    if (g.cells()[i] == 0) continue;
    id_of[i] = static_cast<int>(topo.voxels.size());
    topo.voxels.push_back({g.lattice_index(i), g.cells()[i]});
  }
  const int n = topo.voxel_count();
  auto id_at = [&](int x, int y, int z) { return g.in_bounds(x, y, z) ? id_of[g.linear_index(x, y, z)] : -1; };

  topo.voxel_bonds.resize(static_cast<std::size_t>(n));
  topo.is_surface.assign(static_cast<std::size_t>(n), false);
  const double l = g.lattice_dim();

  for (int v = 0; v < n; ++v) {
    const LatticeIndex c = topo.voxels[v].cell;
    const MaterialDef& ma = palette.at(topo.voxels[v].material);
    const LatticeIndex step[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int axis = 0; axis < 3; ++axis) {
      const int w = id_at(c.x + step[axis].x, c.y + step[axis].y, c.z + step[axis].z);
      if (w < 0) continue;
      const MaterialDef& mb = palette.at(topo.voxels[w].material);
      Bond b;
      b.voxel_a = v;
      b.voxel_b = w;
      b.axis = static_cast<Axis>(axis);
      b.rest_length = l;
      b.composite = composite_properties(ma, mb);
      b.cte_mean = 0.5 * (ma.cte + mb.cte);
      b.k = beam_constants(b.composite.elastic_modulus, b.composite.shear_modulus, l);
      const int id = static_cast<int>(topo.bonds.size());
      topo.bonds.push_back(b);
      topo.voxel_bonds[v].push_back(id);
      topo.voxel_bonds[w].push_back(id);
    }
  }

  for (int v = 0; v < n; ++v) {
    const LatticeIndex c = topo.voxels[v].cell;
    int neighbours = 0;
    for (int s : {-1, 1}) {
      neighbours += id_at(c.x + s, c.y, c.z) >= 0;
      neighbours += id_at(c.x, c.y + s, c.z) >= 0;
      neighbours += id_at(c.x, c.y, c.z + s) >= 0;
    }
    if (neighbours < 6) {
      topo.is_surface[v] = true;
      topo.surface_voxels.push_back(v);
    }
  }

  // Walking the lattice octahedron around each voxel keeps this O(n) and
  // makes the relation symmetric by construction.
  constexpr int r = kNearExclusionManhattan;
  topo.near_exclusion.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const LatticeIndex c = topo.voxels[v].cell;
    auto& list = topo.near_exclusion[v];
    for (int dz = -r; dz <= r; ++dz)
      for (int dy = -r + std::abs(dz); dy <= r - std::abs(dz); ++dy) {
        const int rem = r - std::abs(dz) - std::abs(dy);
        for (int dx = -rem; dx <= rem; ++dx) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          const int w = id_at(c.x + dx, c.y + dy, c.z + dz);
          if (w >= 0) list.push_back(w);
        }
      }
    std::sort(list.begin(), list.end());
  }
  return topo;
}

}  // namespace voxsim

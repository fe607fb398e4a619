#pragma once

#include "voxsim/types.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace voxsim {

/// One palette entry. Units are SI throughout; cte is per degree Celsius.
struct MaterialDef {
  std::string name = "Material";
  double elastic_modulus = 1e6;
  double poisson_ratio = 0.3;
  double density = 1000.0;
  double cte = 0.0;
  double mu_static = 0.0;
  double mu_dynamic = 0.0;
  std::array<double, 4> color{0.5, 0.5, 0.5, 1.0};

  /// Isotropic shear modulus E / (2 (1 + nu)).
  double shear_modulus() const { return elastic_modulus / (2.0 * (1.0 + poisson_ratio)); }

  bool operator==(const MaterialDef&) const = default;
};

/// Throws ModelError describing the first violated constraint.
void validate_material(const MaterialDef& def);

/// Ordered material list. Index 0 is reserved for empty space, so the first
/// material added lives at index 1.
class Palette {
 public:
  /// Appends a material and returns its index. A name already in use is
  /// replaced by a numbered variant ("Name (2)", "Name (3)", ...).
  int add(MaterialDef def);

  const MaterialDef& at(int index) const;
  bool contains(int index) const { return index >= 1 && index <= size(); }
  int size() const { return static_cast<int>(materials_.size()); }
  const std::vector<MaterialDef>& materials() const { return materials_; }

  bool operator==(const Palette&) const = default;

 private:
  std::vector<MaterialDef> materials_;
};

struct LatticeIndex {
  int x = 0;
  int y = 0;
  int z = 0;
  bool operator==(const LatticeIndex&) const = default;
};

/// Dense cubic lattice of material indices, stored x-fastest.
class VoxelGrid {
 public:
  VoxelGrid() = default;
  VoxelGrid(double lattice_dim, int nx, int ny, int nz);

  double lattice_dim() const { return lattice_dim_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  std::size_t cell_count() const { return cells_.size(); }

  bool in_bounds(int x, int y, int z) const {
    return x >= 0 && y >= 0 && z >= 0 && x < nx_ && y < ny_ && z < nz_;
  }
  std::size_t linear_index(int x, int y, int z) const {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(nx_) * (static_cast<std::size_t>(y) +
                                            static_cast<std::size_t>(ny_) * static_cast<std::size_t>(z));
  }
  LatticeIndex lattice_index(std::size_t linear) const;

  int at(int x, int y, int z) const { return in_bounds(x, y, z) ? cells_[linear_index(x, y, z)] : 0; }
  void set(int x, int y, int z, int material) { cells_[linear_index(x, y, z)] = material; }

  const std::vector<int>& cells() const { return cells_; }
  std::vector<int>& cells() { return cells_; }

  /// Center of a cell. The workspace starts at the origin, so the bottom
  /// layer rests exactly on a floor at z = 0.
  Vec3 nominal_position(int x, int y, int z) const {
    return Vec3((x + 0.5) * lattice_dim_, (y + 0.5) * lattice_dim_, (z + 0.5) * lattice_dim_);
  }

  bool operator==(const VoxelGrid&) const = default;

 private:
  double lattice_dim_ = 0.001;
  int nx_ = 0;
  int ny_ = 0;
  int nz_ = 0;
  std::vector<int> cells_;
};

/// Geometry plus materials: palette and lattice together, so that setting a
/// voxel can check the material exists.
class VoxelObject {
 public:
  VoxelObject() = default;
  VoxelObject(double lattice_dim, int nx, int ny, int nz);

  /// Throws ModelError when the definition is invalid.
  int add_material(MaterialDef def);

  /// Returns false (and leaves the grid untouched) when the cell is out of
  /// range or the material is not in the palette. Index 0 clears the cell.
  bool set_voxel(int x, int y, int z, int material);

  /// Fills an axis-aligned block of cells [lo, hi) with one material.
  void fill(LatticeIndex lo, LatticeIndex hi, int material);

  const Palette& palette() const { return palette_; }
  Palette& palette() { return palette_; }
  const VoxelGrid& grid() const { return grid_; }
  VoxelGrid& grid() { return grid_; }

  std::size_t filled_count() const;

  bool operator==(const VoxelObject&) const = default;

 private:
  Palette palette_;
  VoxelGrid grid_;
};

/// Per-voxel mass and isotropic rotational inertia of a solid cube.
inline double voxel_mass(const MaterialDef& m, double lattice_dim) {
  return m.density * lattice_dim * lattice_dim * lattice_dim;
}
inline double voxel_inertia(double mass, double lattice_dim) { return mass * lattice_dim * lattice_dim / 6.0; }

enum class RegionKind { Fixed, Forced };

/// Axis-aligned box in normalized workspace coordinates ([0,1] per axis).
struct Region {
  Vec3 origin = Vec3::Zero();
  Vec3 size = Vec3::Zero();
  RegionKind kind = RegionKind::Fixed;
  Vec3 force = Vec3::Zero();  // total force, forced regions only

  bool operator==(const Region& o) const {
    return origin == o.origin && size == o.size && kind == o.kind && force == o.force;
  }
};

void validate_region(const Region& region);

struct Environment {
  bool gravity_enabled = true;
  double gravity = 9.81;  // magnitude, acting along -Z
  bool floor_enabled = false;
  double temp_base = 25.0;
  double temp_amplitude = 0.0;
  double temp_period = 0.0;
  std::vector<Region> regions;

  /// Validates and appends.
  void add_region(const Region& region);
  void add_fixed_region(const Vec3& origin, const Vec3& size) { add_region({origin, size, RegionKind::Fixed, Vec3::Zero()}); }
  void add_forced_region(const Vec3& origin, const Vec3& size, const Vec3& force) {
    add_region({origin, size, RegionKind::Forced, force});
  }

  /// Sinusoidal temperature schedule; constant at temp_base when the
  /// amplitude is zero.
  double temperature_at(double time) const;

  void validate() const;

  bool operator==(const Environment&) const = default;
};

/// Boundary conditions resolved onto the voxels of an object. Indices follow
/// the filled-cell enumeration order (x fastest).
struct ResolvedRegions {
  std::vector<bool> fixed;
  std::vector<Vec3> ext_force;
};

/// A voxel touches a region iff its cell box overlaps the region box with
/// positive volume. Fixed takes precedence over forced. A forced region's
/// force is split equally over every filled voxel it touches; shares landing
/// on fixed voxels are absorbed by the support. Regions touching nothing
/// produce a warning.
ResolvedRegions resolve_regions(const VoxelObject& object, const Environment& env);

}  // namespace voxsim

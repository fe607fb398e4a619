#include "voxsim/model.hpp"

#include "voxsim/log.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace voxsim {

void validate_material(const MaterialDef& def) {
  auto fail = [&](const std::string& what) { throw ModelError("material '" + def.name + "': " + what); };
  if (!(def.elastic_modulus > 0.0) || !std::isfinite(def.elastic_modulus)) fail("elastic_modulus must be > 0");
  if (!(def.density > 0.0) || !std::isfinite(def.density)) fail("density must be > 0");
  if (!(def.poisson_ratio > -1.0 && def.poisson_ratio < 0.5)) fail("poisson_ratio must lie in (-1, 0.5)");
  if (!std::isfinite(def.cte)) fail("cte must be finite");
  if (!(def.mu_dynamic >= 0.0)) fail("mu_dynamic must be >= 0");
  if (!(def.mu_static >= def.mu_dynamic)) fail("mu_static must be >= mu_dynamic");
}

int Palette::add(MaterialDef def) {
  validate_material(def);
  auto taken = [&](const std::string& name) {
    return std::any_of(materials_.begin(), materials_.end(), [&](const MaterialDef& m) { return m.name == name; });
  };
  if (taken(def.name)) {
    const std::string base = def.name;
    for (int n = 2;; ++n) {
      std::string candidate = base + " (" + std::to_string(n) + ")";
      if (!taken(candidate)) {
        def.name = std::move(candidate);
        break;
      }
    }
  }
  materials_.push_back(std::move(def));
  return size();
}

const MaterialDef& Palette::at(int index) const {
  if (!contains(index)) throw ModelError("material index " + std::to_string(index) + " not in palette");
  return materials_[static_cast<std::size_t>(index - 1)];
}

VoxelGrid::VoxelGrid(double lattice_dim, int nx, int ny, int nz)
    : lattice_dim_(lattice_dim), nx_(nx), ny_(ny), nz_(nz) {
  if (!(lattice_dim > 0.0)) throw ModelError("lattice_dim must be > 0");
  if (nx < 0 || ny < 0 || nz < 0) throw ModelError("grid dimensions must be non-negative");
  cells_.assign(static_cast<std::size_t>(nx) * ny * nz, 0);
}

LatticeIndex VoxelGrid::lattice_index(std::size_t linear) const {
  const auto n = static_cast<std::size_t>(nx_);
  const auto nxy = n * static_cast<std::size_t>(ny_);
  return {static_cast<int>(linear % n), static_cast<int>((linear % nxy) / n), static_cast<int>(linear / nxy)};
}

VoxelObject::VoxelObject(double lattice_dim, int nx, int ny, int nz) : grid_(lattice_dim, nx, ny, nz) {}

int VoxelObject::add_material(MaterialDef def) { return palette_.add(std::move(def)); }

bool VoxelObject::set_voxel(int x, int y, int z, int material) {
  if (!grid_.in_bounds(x, y, z)) return false;
  if (material != 0 && !palette_.contains(material)) return false;
  grid_.set(x, y, z, material);
  return true;
}

void VoxelObject::fill(LatticeIndex lo, LatticeIndex hi, int material) {
  for (int z = lo.z; z < hi.z; ++z)
    for (int y = lo.y; y < hi.y; ++y)
      for (int x = lo.x; x < hi.x; ++x) set_voxel(x, y, z, material);
}

std::size_t VoxelObject::filled_count() const {
  return static_cast<std::size_t>(
      std::count_if(grid_.cells().begin(), grid_.cells().end(), [](int c) { return c != 0; }));
}

void validate_region(const Region& r) {
  constexpr double kSlack = 1e-9;
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(r.origin[i]) || !std::isfinite(r.size[i])) throw ModelError("region box is not finite");
    if (r.origin[i] < 0.0 || r.origin[i] > 1.0) throw ModelError("region origin must lie in [0, 1]");
    if (r.size[i] < 0.0 || r.size[i] > 1.0) throw ModelError("region size must lie in [0, 1]");
    if (r.origin[i] + r.size[i] > 1.0 + kSlack) throw ModelError("region extends past the workspace");
  }
  if (r.kind == RegionKind::Forced && !r.force.allFinite()) throw ModelError("region force is not finite");
}

void Environment::add_region(const Region& region) {
  validate_region(region);
  regions.push_back(region);
}

double Environment::temperature_at(double time) const {
  if (temp_amplitude == 0.0) return temp_base;
  return temp_base + temp_amplitude * std::sin(2.0 * M_PI * time / temp_period);
}

void Environment::validate() const {
  if (!(gravity >= 0.0) || !std::isfinite(gravity)) throw ModelError("gravity must be finite and >= 0");
  if (temp_amplitude != 0.0 && !(temp_period > 0.0)) throw ModelError("temp_period must be > 0 when temp_amplitude != 0");
  for (const auto& r : regions) validate_region(r);
}

ResolvedRegions resolve_regions(const VoxelObject& object, const Environment& env) {
  const VoxelGrid& g = object.grid();
  std::vector<std::size_t> filled;
  for (std::size_t i = 0; i < g.cell_count(); ++i)
    if (g.cells()[i] != 0) filled.push_back(i);

  ResolvedRegions out;
  out.fixed.assign(filled.size(), false);
  out.ext_force.assign(filled.size(), Vec3::Zero());

  const double dims[3] = {double(g.nx()), double(g.ny()), double(g.nz())};
  auto touches = [&](const Region& r, std::size_t cell) {
    const LatticeIndex c = g.lattice_index(cell);
    const int idx[3] = {c.x, c.y, c.z};
    for (int a = 0; a < 3; ++a) {
      const double lo = idx[a] / dims[a];
      const double hi = (idx[a] + 1) / dims[a];
      if (!(r.origin[a] < hi && r.origin[a] + r.size[a] > lo)) return false;
    }
    return true;
  };

  for (std::size_t ri = 0; ri < env.regions.size(); ++ri) {
    const Region& r = env.regions[ri];
    std::vector<std::size_t> hit;
    for (std::size_t v = 0; v < filled.size(); ++v)
      if (touches(r, filled[v])) hit.push_back(v);
    if (hit.empty()) {
      std::ostringstream msg;
      msg << (r.kind == RegionKind::Fixed ? "fixed" : "forced") << " region " << ri << " touches no voxels";
      warn(msg.str());
      continue;
    }
    if (r.kind == RegionKind::Fixed) {
      for (auto v : hit) out.fixed[v] = true;
    } else {
      const Vec3 share = r.force / static_cast<double>(hit.size());
      for (auto v : hit) out.ext_force[v] += share;
    }
  }
  for (std::size_t v = 0; v < filled.size(); ++v)
    if (out.fixed[v]) out.ext_force[v].setZero();
  return out;
}

}  // namespace voxsim

#include "voxsim/config.hpp"

#include "voxsim/types.hpp"

#include <cmath>

namespace voxsim {

std::string_view to_string(CollisionScheme scheme) {
  switch (scheme) {
    case CollisionScheme::AllEvery: return "all-every";
    case CollisionScheme::SurfEvery: return "surf-every";
    case CollisionScheme::AllHorizon: return "all-horizon";
    case CollisionScheme::SurfHorizon: return "surf-horizon";
  }
  return "surf-horizon";
}

std::optional<CollisionScheme> parse_collision_scheme(std::string_view text) {
  for (auto s : {CollisionScheme::AllEvery, CollisionScheme::SurfEvery, CollisionScheme::AllHorizon,
                 CollisionScheme::SurfHorizon})
    if (to_string(s) == text) return s;
  return std::nullopt;
}

void SimConfig::validate() const {
  if (!(dt_safety > 0.0 && dt_safety <= 1.0)) throw ModelError("dt_safety must lie in (0, 1]");
  auto ratio = [](double z, const char* name) {
    if (!(z >= 0.0 && z <= 1.0)) throw ModelError(std::string(name) + " must lie in [0, 1]");
  };
  ratio(zeta_bond, "zeta_bond");
  if (zeta_bond_rotation) ratio(*zeta_bond_rotation, "zeta_bond_rotation");
  ratio(zeta_ground, "zeta_ground");
  ratio(zeta_collision, "zeta_collision");
  if (!(horizon_voxels > 0.0) || !std::isfinite(horizon_voxels)) throw ModelError("horizon_voxels must be > 0");
  if (!(fallback_dt > 0.0) || !std::isfinite(fallback_dt)) throw ModelError("fallback_dt must be > 0");
}

}  // namespace voxsim

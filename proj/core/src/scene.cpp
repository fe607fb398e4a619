#include "voxsim/scene.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace voxsim {
namespace {

using nlohmann::json;

// Cursor into the document that remembers its JSON pointer for diagnostics.
struct Node {
  const json& value;
  std::string path;

  Node child(const std::string& key) const { return {value.at(key), path + "/" + key}; }
  Node item(std::size_t i) const { return {value.at(i), path + "/" + std::to_string(i)}; }
  bool has(const std::string& key) const { return value.is_object() && value.contains(key); }

  [[noreturn]] void fail(const std::string& what) const { throw SceneError(path.empty() ? "/" : path, what); }

  const json& require_object() const {
    if (!value.is_object()) fail("expected an object");
    return value;
  }
  const json& require_array(std::size_t expected = 0) const {
    if (!value.is_array()) fail("expected an array");
    if (expected && value.size() != expected) fail("expected " + std::to_string(expected) + " elements");
    return value;
  }
  double number() const {
    if (!value.is_number()) fail("expected a number");
    return value.get<double>();
  }
  long integer() const {
    if (!value.is_number_integer()) fail("expected an integer");
    return value.get<long>();
  }
  bool boolean() const {
    if (!value.is_boolean()) fail("expected a boolean");
    return value.get<bool>();
  }
  std::string string() const {
    if (!value.is_string()) fail("expected a string");
    return value.get<std::string>();
  }
  Vec3 vec3() const {
    require_array(3);
    return {item(0).number(), item(1).number(), item(2).number()};
  }

  Node required(const std::string& key) const {
    require_object();
    if (!value.contains(key)) throw SceneError(path + "/" + key, "missing required field");
    return child(key);
  }
  template <class F>
  void optional(const std::string& key, F&& f) const {
    if (has(key)) f(child(key));
  }
};

MaterialDef parse_material(const Node& n) {
  n.require_object();
  MaterialDef m;
  n.optional("name", [&](const Node& c) { m.name = c.string(); });
  m.elastic_modulus = n.required("elastic_modulus").number();
  n.optional("poisson_ratio", [&](const Node& c) { m.poisson_ratio = c.number(); });
  n.optional("density", [&](const Node& c) { m.density = c.number(); });
  n.optional("cte", [&](const Node& c) { m.cte = c.number(); });
  n.optional("mu_static", [&](const Node& c) { m.mu_static = c.number(); });
  n.optional("mu_dynamic", [&](const Node& c) { m.mu_dynamic = c.number(); });
  n.optional("color", [&](const Node& c) {
    c.require_array(4);
    for (std::size_t i = 0; i < 4; ++i) m.color[i] = c.item(i).number();
  });
  try {
    validate_material(m);
  } catch (const ModelError& e) {
    n.fail(e.what());
  }
  return m;
}

Region parse_region(const Node& n) {
  n.require_object();
  Region r;
  const std::string kind = n.required("kind").string();
  if (kind == "fixed") {
    r.kind = RegionKind::Fixed;
  } else if (kind == "forced") {
    r.kind = RegionKind::Forced;
  } else {
    n.child("kind").fail("expected \"fixed\" or \"forced\"");
  }
  r.origin = n.required("origin").vec3();
  r.size = n.required("size").vec3();
  if (r.kind == RegionKind::Forced) r.force = n.required("force").vec3();
  try {
    validate_region(r);
  } catch (const ModelError& e) {
    n.fail(e.what());
  }
  return r;
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

}  // namespace

Scene load_scene(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SceneError("/", std::string("parse error: ") + e.what());
  }
  const Node root{doc, ""};
  root.require_object();

  Scene scene;
  const double lattice_dim = root.required("lattice_dim").number();
  if (!(lattice_dim > 0.0)) root.child("lattice_dim").fail("must be > 0");

  const Node dims = root.required("dims");
  dims.require_array(3);
  long d[3];
  for (std::size_t i = 0; i < 3; ++i) {
    d[i] = dims.item(i).integer();
    if (d[i] < 0) dims.item(i).fail("must be >= 0");
  }
  scene.object = VoxelObject(lattice_dim, int(d[0]), int(d[1]), int(d[2]));

  const Node palette = root.required("palette");
  palette.require_array();
  for (std::size_t i = 0; i < palette.value.size(); ++i) {
    MaterialDef m = parse_material(palette.item(i));
    const std::string name = m.name;
    scene.object.add_material(std::move(m));
    if (scene.object.palette().at(int(i) + 1).name != name) palette.item(i).child("name").fail("duplicate material name");
  }

  const Node voxels = root.required("voxels");
  voxels.require_array(static_cast<std::size_t>(d[0] * d[1] * d[2]));
  if (voxels.value.size() != scene.object.grid().cell_count()) voxels.fail("size does not match dims");
  const int palette_size = scene.object.palette().size();
  for (std::size_t i = 0; i < voxels.value.size(); ++i) {
    const Node cell = voxels.item(i);
    const long idx = cell.integer();
    if (idx < 0 || idx > palette_size)
      cell.fail("material index " + std::to_string(idx) + " not in palette of " + std::to_string(palette_size));
    scene.object.grid().cells()[i] = int(idx);
  }

  root.optional("regions", [&](const Node& regions) {
    regions.require_array();
    for (std::size_t i = 0; i < regions.value.size(); ++i)
      scene.environment.regions.push_back(parse_region(regions.item(i)));
  });

  root.optional("environment", [&](const Node& n) {
    n.require_object();
    Environment& e = scene.environment;
    n.optional("gravity_enabled", [&](const Node& c) { e.gravity_enabled = c.boolean(); });
    n.optional("gravity", [&](const Node& c) { e.gravity = c.number(); });
    n.optional("floor_enabled", [&](const Node& c) { e.floor_enabled = c.boolean(); });
    n.optional("temp_base", [&](const Node& c) { e.temp_base = c.number(); });
    n.optional("temp_amplitude", [&](const Node& c) { e.temp_amplitude = c.number(); });
    n.optional("temp_period", [&](const Node& c) { e.temp_period = c.number(); });
    try {
      e.validate();
    } catch (const ModelError& err) {
      n.fail(err.what());
    }
  });

  root.optional("sim", [&](const Node& n) {
    n.require_object();
    SimConfig& s = scene.sim;
    n.optional("dt_safety", [&](const Node& c) { s.dt_safety = c.number(); });
    n.optional("zeta_bond", [&](const Node& c) { s.zeta_bond = c.number(); });
    n.optional("zeta_bond_rotation", [&](const Node& c) { s.zeta_bond_rotation = c.number(); });
    n.optional("zeta_ground", [&](const Node& c) { s.zeta_ground = c.number(); });
    n.optional("zeta_collision", [&](const Node& c) { s.zeta_collision = c.number(); });
    n.optional("horizon_voxels", [&](const Node& c) { s.horizon_voxels = c.number(); });
    n.optional("collision_scheme", [&](const Node& c) {
      auto scheme = parse_collision_scheme(c.string());
      if (!scheme) c.fail("unknown collision scheme");
      s.collision_scheme = *scheme;
    });
    n.optional("self_collision", [&](const Node& c) { s.self_collision = c.boolean(); });
    n.optional("fallback_dt", [&](const Node& c) { s.fallback_dt = c.number(); });
    try {
      s.validate();
    } catch (const ModelError& err) {
      n.fail(err.what());
    }
  });
  return scene;
}

std::string save_scene(const Scene& scene) {
  const VoxelGrid& g = scene.object.grid();
  json doc;
  doc["lattice_dim"] = g.lattice_dim();
  doc["dims"] = json::array({g.nx(), g.ny(), g.nz()});

  json palette = json::array();
  for (const MaterialDef& m : scene.object.palette().materials()) {
    palette.push_back({{"name", m.name},
                       {"elastic_modulus", m.elastic_modulus},
                       {"poisson_ratio", m.poisson_ratio},
                       {"density", m.density},
                       {"cte", m.cte},
                       {"mu_static", m.mu_static},
                       {"mu_dynamic", m.mu_dynamic},
                       {"color", json::array({m.color[0], m.color[1], m.color[2], m.color[3]})}});
  }
  doc["palette"] = std::move(palette);
  doc["voxels"] = g.cells();

  json regions = json::array();
  for (const Region& r : scene.environment.regions) {
    json jr = {{"kind", r.kind == RegionKind::Fixed ? "fixed" : "forced"},
               {"origin", vec_json(r.origin)},
               {"size", vec_json(r.size)}};
    if (r.kind == RegionKind::Forced) jr["force"] = vec_json(r.force);
    regions.push_back(std::move(jr));
  }
  doc["regions"] = std::move(regions);

  const Environment& e = scene.environment;
  doc["environment"] = {{"gravity_enabled", e.gravity_enabled}, {"gravity", e.gravity},
                        {"floor_enabled", e.floor_enabled},     {"temp_base", e.temp_base},
                        {"temp_amplitude", e.temp_amplitude},   {"temp_period", e.temp_period}};

  const SimConfig& s = scene.sim;
  doc["sim"] = {{"dt_safety", s.dt_safety},
                {"zeta_bond", s.zeta_bond},
                {"zeta_ground", s.zeta_ground},
                {"zeta_collision", s.zeta_collision},
                {"horizon_voxels", s.horizon_voxels},
                {"collision_scheme", std::string(to_string(s.collision_scheme))},
                {"self_collision", s.self_collision},
                {"fallback_dt", s.fallback_dt}};
  if (s.zeta_bond_rotation) doc["sim"]["zeta_bond_rotation"] = *s.zeta_bond_rotation;
  return doc.dump(2);
}

Scene load_scene_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("/", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_scene(buf.str());
}

void save_scene_file(const Scene& scene, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << save_scene(scene) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace voxsim

#include "voxsim/frames.hpp"

#include "voxsim/oracle.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace voxsim {

using nlohmann::json;

bool FrameDump::operator==(const FrameDump& o) const {
  if (step != o.step || time != o.time || positions != o.positions || bond_strain != o.bond_strain) return false;
  if (orientations.size() != o.orientations.size()) return false;
  for (std::size_t i = 0; i < orientations.size(); ++i)
    if (orientations[i].coeffs() != o.orientations[i].coeffs()) return false;
  return true;
}

std::vector<double> bond_strains(const Simulation& sim) {
  const double temp_delta = sim.temperature() - sim.environment().temp_base;
  std::vector<double> strain;
  strain.reserve(sim.topology().bonds.size());
  for (const Bond& b : sim.topology().bonds) {
    const double rest = thermal_rest_length(b, temp_delta);
    const double length = (sim.states()[b.voxel_b].position - sim.states()[b.voxel_a].position).norm();
    strain.push_back((length - rest) / rest);
  }
  return strain;
}

FrameDump capture_frame(const Simulation& sim, bool with_strain) {
  FrameDump f;
  f.step = sim.step_count();
  f.time = sim.time();
  for (const VoxelState& s : sim.states()) {
    f.positions.push_back(s.position);
    f.orientations.push_back(s.orientation);
  }
  if (with_strain) f.bond_strain = bond_strains(sim);
  return f;
}

void write_frame(std::ostream& out, const FrameDump& frame) {
  out << json{{"step", frame.step},
              {"time", frame.time},
              {"voxels", frame.positions.size()},
              {"bonds", frame.bond_strain.size()}}
             .dump()
      << '\n';
  for (std::size_t v = 0; v < frame.positions.size(); ++v) {
    const Vec3& p = frame.positions[v];
    const Quat& q = frame.orientations[v];
    out << json{{"v", v}, {"p", {p.x(), p.y(), p.z()}}, {"q", {q.w(), q.x(), q.y(), q.z()}}}.dump() << '\n';
  }
  for (std::size_t b = 0; b < frame.bond_strain.size(); ++b)
    out << json{{"b", b}, {"strain", frame.bond_strain[b]}}.dump() << '\n';
}

std::vector<FrameDump> read_frames(std::istream& in) {
  std::vector<FrameDump> frames;
  std::string line;
  long line_no = 0;
  auto next = [&]() -> json {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty()) return json::parse(line);
    }
    return nullptr;
  };
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("frame dump line " + std::to_string(line_no) + ": " + what);
  };

  try {
    for (json header = next(); !header.is_null(); header = next()) {
      if (!header.contains("step")) fail("expected a frame header");
      FrameDump f;
      f.step = header.at("step").get<long>();
      f.time = header.at("time").get<double>();
      const auto voxels = header.at("voxels").get<std::size_t>();
      const auto bonds = header.value("bonds", std::size_t{0});
      if (!frames.empty() && voxels != frames.front().positions.size()) fail("voxel count changed between frames");
      for (std::size_t v = 0; v < voxels; ++v) {
        const json row = next();
        if (row.is_null() || row.at("v").get<std::size_t>() != v) fail("missing voxel record " + std::to_string(v));
        const auto& p = row.at("p");
        const auto& q = row.at("q");
        f.positions.emplace_back(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
        f.orientations.emplace_back(q[0].get<double>(), q[1].get<double>(), q[2].get<double>(), q[3].get<double>());
      }
      for (std::size_t b = 0; b < bonds; ++b) {
        const json row = next();
        if (row.is_null() || row.at("b").get<std::size_t>() != b) fail("missing bond record " + std::to_string(b));
        f.bond_strain.push_back(row.at("strain").get<double>());
      }
      frames.push_back(std::move(f));
    }
  } catch (const json::exception& e) {
    fail(e.what());
  }
  return frames;
}

TraceWriter::TraceWriter(const std::filesystem::path& path) : out_(path) {
  if (!out_) throw std::runtime_error("cannot open trace file " + path.string());
  out_.precision(17);
  out_ << "step,time,dt,temperature,max_speed,kinetic_energy,max_displacement,candidate_pairs,active_contacts\n";
}

void TraceWriter::write(const StepStats& s) {
  out_ << s.step << ',' << s.time << ',' << s.dt << ',' << s.temperature << ',' << s.max_speed << ','
       << s.kinetic_energy << ',' << s.max_displacement << ',' << s.candidate_pairs << ',' << s.active_contacts
       << '\n';
}

void write_spectrum_csv(const std::filesystem::path& path, std::span<const double> samples, double dt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open spectrum file " + path.string());
  out.precision(17);
  const std::vector<double> mag = magnitude_spectrum(samples);
  const double bin = 1.0 / (static_cast<double>(samples.size()) * dt);
  out << "frequency,magnitude\n";
  for (std::size_t k = 0; k < mag.size(); ++k) out << k * bin << ',' << mag[k] << '\n';
}

}  // namespace voxsim

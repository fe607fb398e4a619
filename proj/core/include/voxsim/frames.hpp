#pragma once

// Output formats: newline-delimited JSON frame dumps and CSV traces.

#include "voxsim/simulation.hpp"

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>
#include <vector>

namespace voxsim {

/// Snapshot of every voxel at one step.
struct FrameDump {
  long step = 0;
  double time = 0.0;
  std::vector<Vec3> positions;
  std::vector<Quat> orientations;
  std::vector<double> bond_strain;  // empty unless requested

  bool operator==(const FrameDump& o) const;
};

/// Engineering strain of each bond against its thermally adjusted rest
/// length, in topology order.
std::vector<double> bond_strains(const Simulation& sim);

FrameDump capture_frame(const Simulation& sim, bool with_strain = false);

/// One header record {"step","time","voxels","bonds"} followed by one
/// record per voxel {"v","p":[x,y,z],"q":[w,x,y,z]} and, when present, one
/// per bond {"b","strain"}. Numbers are written with round-trip precision.
void write_frame(std::ostream& out, const FrameDump& frame);

/// Reads every frame from a dump. Throws std::runtime_error on malformed
/// records or frames whose voxel count differs from the first frame.
std::vector<FrameDump> read_frames(std::istream& in);

/// Per-step CSV: step,time,dt,temperature,max_speed,kinetic_energy,
/// max_displacement,candidate_pairs,active_contacts.
class TraceWriter {
 public:
  explicit TraceWriter(const std::filesystem::path& path);
  void write(const StepStats& stats);

 private:
  std::ofstream out_;
};

/// frequency,magnitude rows of the one-sided spectrum of `samples`.
void write_spectrum_csv(const std::filesystem::path& path, std::span<const double> samples, double dt);

}  // namespace voxsim

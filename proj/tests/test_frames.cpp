#include "voxsim/frames.hpp"
#include "voxsim/scenes.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace voxsim;

TEST(Frames, RoundTripIsExact) {
  Simulation sim(scenes::clapper());
  std::stringstream io;
  std::vector<FrameDump> written;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 200; ++k) sim.step();
    written.push_back(capture_frame(sim, i == 1));
    write_frame(io, written.back());
  }
  const std::vector<FrameDump> read = read_frames(io);
  ASSERT_EQ(read.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(read[i] == written[i]) << i;

  // The last frame matches the in-memory state bit for bit.
  for (int v = 0; v < sim.topology().voxel_count(); ++v) {
    EXPECT_EQ(read[2].positions[v], sim.states()[v].position);
    EXPECT_EQ(read[2].orientations[v].coeffs(), sim.states()[v].orientation.coeffs());
  }
  EXPECT_EQ(read[1].bond_strain.size(), sim.topology().bonds.size());
  EXPECT_TRUE(read[0].bond_strain.empty());
}

TEST(Frames, StrainOfStretchedBond) {
  Scene s = scenes::thin_cantilever(0.0);
  Simulation sim(s);
  for (double e : bond_strains(sim)) EXPECT_NEAR(e, 0.0, 1e-14);
  sim.states().back().position.x() += 0.0001;
  EXPECT_NEAR(bond_strains(sim).back(), 0.1, 1e-12);
}

TEST(Frames, VoxelCountMismatchThrows) {
  Simulation a(scenes::cube(2)), b(scenes::cube(3));
  std::stringstream io;
  write_frame(io, capture_frame(a));
  write_frame(io, capture_frame(b));
  EXPECT_THROW(read_frames(io), std::runtime_error);
}

TEST(Frames, MalformedRecordThrows) {
  std::stringstream io("{\"step\": 0, \"time\": 0, \"voxels\": 1, \"bonds\": 0}\nnot json\n");
  EXPECT_THROW(read_frames(io), std::runtime_error);
  std::stringstream truncated("{\"step\": 0, \"time\": 0, \"voxels\": 2, \"bonds\": 0}\n"
                              "{\"v\": 0, \"p\": [0,0,0], \"q\": [1,0,0,0]}\n");
  EXPECT_THROW(read_frames(truncated), std::runtime_error);
}

TEST(Trace, HeaderAndOneRowPerStep) {
  const auto path = std::filesystem::temp_directory_path() / "voxsim_trace_test.csv";
  {
    TraceWriter trace(path);
    Simulation sim(scenes::friction_block());
    for (int i = 0; i < 5; ++i) trace.write(sim.step());
  }
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "step,time,dt,temperature,max_speed,kinetic_energy,max_displacement,candidate_pairs,active_contacts");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.substr(0, line.find(',')), std::to_string(rows));
  }
  EXPECT_EQ(rows, 5);
  std::filesystem::remove(path);
}

#include "voxsim/experiments.hpp"
#include "voxsim/scenes.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace voxsim;

TEST(LoadPointDeflection, WorkConjugateMean) {
  const std::vector<Vec3> loads = {Vec3(0, 0, -1), Vec3(0, 0, -1), Vec3::Zero()};
  const std::vector<Vec3> d = {Vec3(0, 0, -0.002), Vec3(5, 0, -0.004), Vec3(0, 0, -9)};
  EXPECT_NEAR(load_point_deflection(d, loads), 0.003, 1e-15);
  EXPECT_EQ(load_point_deflection(d, std::vector<Vec3>(3, Vec3::Zero())), 0.0);
}

TEST(Relax, ThinCantileverConverges) {
  RelaxOptions opt;
  opt.tolerance = 1e-6;
  const StaticComparison c = compare_static(scenes::thin_cantilever(), opt);
  EXPECT_TRUE(c.dynamic.converged);
  EXPECT_NEAR(c.dynamic.deflection, c.direct_stiffness, 0.01 * c.direct_stiffness);
  EXPECT_GT(c.direct_stiffness, 0.0);
}

TEST(Jitter, ConstantSignalHasNone) {
  Simulation sim(scenes::thin_cantilever(0.0));
  const JitterResult j = measure_jitter(sim, 10, 100);
  EXPECT_LT(j.jitter, 1e-15);
  EXPECT_LT(j.kinetic_energy, 1e-25);
}

TEST(Modal, SampleGridIsExact) {
  ModalOptions opt;
  opt.samples = 200;
  opt.duration = 0.002;
  const ModalResult r = run_modal(scenes::modal_beam(scenes::modal_beam_density()), 1, opt);
  EXPECT_EQ(r.trace.size(), 200u);
  EXPECT_NEAR(r.dt * r.substeps, r.sample_period, 1e-18);
  EXPECT_LE(r.dt, Simulation(scenes::modal_beam(scenes::modal_beam_density())).stable_dt());
  EXPECT_GT(r.trace[10], r.trace[0]);  // the tip starts moving up
}

TEST(Throughput, RateIsStepsOverTime) {
  const Throughput t = measure_throughput(scenes::cube(4), 100);
  EXPECT_EQ(t.voxels, 64);
  EXPECT_EQ(t.steps, 100);
  EXPECT_NEAR(t.iterations_per_second, 100 / t.wall_seconds, 1e-9 * t.iterations_per_second);
  EXPECT_NEAR(t.voxel_iterations_per_second, 64 * t.iterations_per_second, 1e-9 * t.voxel_iterations_per_second);
}

TEST(Schemes, SameResultAcrossSchemes) {
  const CollisionScheme all[] = {CollisionScheme::AllEvery, CollisionScheme::SurfHorizon};
  const auto runs = compare_schemes(scenes::clapper(), 0.002, all);
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[0].steps, runs[1].steps);
  EXPECT_EQ(runs[0].pair_rebuilds, runs[0].steps);
  EXPECT_LT(runs[1].pair_rebuilds, runs[1].steps);
  EXPECT_LT(max_position_difference(runs[0].final_positions, runs[1].final_positions), 1e-12);
}

TEST(Friction, RampProtocol) {
  const FrictionResult r = friction_ramp(scenes::friction_block());
  EXPECT_LE(std::abs(r.observed_break_step - r.predicted_break_step), 1);
  EXPECT_NEAR(r.measured_deceleration, r.expected_deceleration, 0.02 * r.expected_deceleration);
  EXPECT_GT(r.halt_step, 0);
  EXPECT_FALSE(r.reversed);
  EXPECT_TRUE(r.stayed_halted);
}

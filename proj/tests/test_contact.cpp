#include "voxsim/contact.hpp"
#include "voxsim/log.hpp"
#include "voxsim/scenes.hpp"
#include "voxsim/simulation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

using namespace voxsim;

namespace {

VoxelState resting(double mass, double z) {
  VoxelState s;
  s.mass = mass;
  s.inertia = mass * 1e-6 / 6.0;
  s.position = Vec3(0, 0, z);
  return s;
}

FloorParams floor_params(double mu_s = 0.6, double mu_d = 0.4) {
  FloorParams p;
  p.radius = 0.0005;
  p.stiffness = 1000.0;
  p.mu_static = mu_s;
  p.mu_dynamic = mu_d;
  return p;
}

}  // namespace

TEST(Floor, AboveFloorIsFree) {
  VoxelState s = resting(1e-6, 0.001);
  s.friction_latched = true;
  const FloorContact c = floor_response(s, floor_params(), Vec3(1, 0, -1), 1e-5);
  EXPECT_FALSE(c.in_contact);
  EXPECT_FALSE(c.latched);
  EXPECT_EQ(c.normal_force, 0.0);
  EXPECT_EQ(c.friction, Vec3::Zero());
}

TEST(Floor, PenaltyNormalForce) {
  const VoxelState s = resting(1e-6, 0.0004);
  const FloorContact c = floor_response(s, floor_params(), Vec3::Zero(), 1e-5);
  EXPECT_NEAR(c.normal_force, 1000.0 * 1e-4, 1e-12);
  EXPECT_NEAR(c.penetration, 1e-4, 1e-15);
}

TEST(Floor, NormalDampingOpposesApproachButNeverPulls) {
  VoxelState s = resting(1e-6, 0.0004999);
  FloorParams p = floor_params();
  p.zeta = 1.0;
  s.linear_momentum = Vec3(0, 0, -0.1) * s.mass;
  const double c = 2.0 * std::sqrt(s.mass * p.stiffness);
  EXPECT_NEAR(floor_response(s, p, Vec3::Zero(), 1e-5).normal_force, 1000.0 * 1e-7 + c * 0.1, 1e-12);
  s.linear_momentum = Vec3(0, 0, 10.0) * s.mass;
  EXPECT_EQ(floor_response(s, p, Vec3::Zero(), 1e-5).normal_force, 0.0);
}

TEST(Floor, LatchedVoxelHoldsBelowStaticLimit) {
  VoxelState s = resting(1e-6, 0.0004);
  s.friction_latched = true;
  const double fn = 0.1, limit = 0.6 * fn;
  FloorContact c = floor_response(s, floor_params(), Vec3(0.99 * limit, 0, 0), 1e-5);
  EXPECT_TRUE(c.latched);
  EXPECT_NEAR(c.friction.x(), -0.99 * limit, 1e-15);
  c = floor_response(s, floor_params(), Vec3(1.01 * limit, 0, 0), 1e-5);
  EXPECT_FALSE(c.latched);
  EXPECT_NEAR(c.friction.x(), -0.4 * fn, 1e-15);
}

TEST(Floor, HaltRule) {
  // F_n = 1 N, mu_d = 0.5, dt = 1e-5 s, m = 1e-6 kg: halt iff V_l <= 5 m/s.
  FloorParams p = floor_params(0.5, 0.5);
  p.stiffness = 1.0 / 0.0001;
  VoxelState s = resting(1e-6, 0.0004);
  for (double v : {4.0, 4.99, 5.01, 6.0}) {
    s.linear_momentum = Vec3(v, 0, 0) * s.mass;
    const FloorContact c = floor_response(s, p, Vec3::Zero(), 1e-5);
    EXPECT_NEAR(c.normal_force, 1.0, 1e-9);
    EXPECT_EQ(c.latched, v < 5.0) << v;
    if (!c.latched) {
      EXPECT_NEAR(c.friction.x(), -0.5, 1e-9);
    }
  }
}

TEST(Floor, SlidingFrictionOpposesVelocity) {
  VoxelState s = resting(1e-6, 0.0004);
  s.linear_momentum = Vec3(-3, 4, 0) * s.mass;
  const FloorContact c = floor_response(s, floor_params(), Vec3(1, 0, 0), 1e-5);
  EXPECT_FALSE(c.latched);
  EXPECT_NEAR(c.friction.norm(), 0.4 * 0.1, 1e-15);
  EXPECT_NEAR(c.friction.normalized().dot(Vec3(3, -4, 0) / 5.0), 1.0, 1e-12);
  EXPECT_EQ(c.friction.z(), 0.0);
}

TEST(MotionBudget, StaleAfterHalfHorizon) {
  CollisionPairList list;
  list.horizon = 0.002;
  const double v = 0.3, dt = 1e-6;
  const long expected = static_cast<long>(std::ceil(list.horizon / (2.0 * v * dt)));
  long steps = 0;
  while (!list.accumulate_motion(v, dt)) ++steps;
  EXPECT_NEAR(steps + 1, expected, 1);
  EXPECT_TRUE(list.stale());

  CollisionPairList still{{}, 0.0, 0.002};
  for (int i = 0; i < 100000; ++i) ASSERT_FALSE(still.accumulate_motion(0.0, dt));
}

TEST(PairList, SeparatedBodiesGiveNoPairs) {
  Scene s = scenes::single_voxel();
  const MaterialDef mat = s.object.palette().at(1);
  s.object = VoxelObject(0.001, 11, 1, 1);
  const int m = s.object.add_material(mat);
  s.object.set_voxel(0, 0, 0, m);
  s.object.set_voxel(10, 0, 0, m);
  Simulation sim(s);
  const CollisionPairList list = rebuild_pairs(sim.states(), sim.topology(), CollisionScheme::AllEvery, 0.0005, 0.002);
  EXPECT_TRUE(list.pairs.empty());
  EXPECT_EQ(list.motion_budget, 0.0);
}

TEST(PairList, MatchesBruteForceOnClapper) {
  Simulation sim(scenes::clapper());
  for (int i = 0; i < 1500; ++i) sim.step();  // bend the arms toward each other
  const auto& topo = sim.topology();
  const double r = 0.0005 * 1.6, h = 0.002;
  for (CollisionScheme scheme : {CollisionScheme::AllEvery, CollisionScheme::SurfEvery}) {
    const CollisionPairList list = rebuild_pairs(sim.states(), topo, scheme, r, h);
    std::set<std::pair<int, int>> expected;
    const int n = topo.voxel_count();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (scheme == CollisionScheme::SurfEvery && !(topo.is_surface[a] && topo.is_surface[b])) continue;
        const LatticeIndex ca = topo.voxels[a].cell, cb = topo.voxels[b].cell;
        if (std::abs(ca.x - cb.x) + std::abs(ca.y - cb.y) + std::abs(ca.z - cb.z) <= kNearExclusionManhattan) continue;
        if ((sim.states()[a].position - sim.states()[b].position).norm() < 2 * r + h) expected.insert({a, b});
      }
    std::set<std::pair<int, int>> got;
    for (const CollisionPair& p : list.pairs) got.insert({p.a, p.b});
    EXPECT_EQ(got, expected);
    EXPECT_TRUE(std::is_sorted(list.pairs.begin(), list.pairs.end()));
  }
}

TEST(Collision, PenaltyLaw) {
  VoxelState a, b;
  a.mass = b.mass = 1e-6;
  b.position = Vec3(0.0009, 0, 0);
  CollisionParams p{0.0005, 0.0005, 1000.0, 1000.0, 0.0};
  ContactLoads c = collision_response(a, b, p);
  EXPECT_NEAR(c.overlap, 1e-4, 1e-15);
  EXPECT_NEAR(c.force_b.x(), 1000.0 * 1e-4, 1e-12);
  EXPECT_EQ(c.force_a, -c.force_b);

  b.position.x() = 0.001;
  c = collision_response(a, b, p);
  EXPECT_EQ(c.force_b, Vec3::Zero());

  // Dissimilar stiffness combine in series.
  b.position.x() = 0.0009;
  p.stiffness_b = 3000.0;
  EXPECT_NEAR(collision_response(a, b, p).force_b.x(), 1500.0 * 1e-4, 1e-12);
}

TEST(Collision, CoincidentCentersPushAlongZ) {
  VoxelState a, b;
  CollisionParams p{0.0005, 0.0005, 1000.0, 1000.0, 0.0};
  std::string warning;
  const WarningHandler previous = set_warning_handler([&](std::string_view m) { warning = m; });
  const ContactLoads c = collision_response(a, b, p);
  set_warning_handler(previous);
  EXPECT_FALSE(warning.empty());
  EXPECT_NEAR(c.force_b.z(), 1000.0 * 0.001, 1e-12);
  EXPECT_EQ(c.force_a, -c.force_b);
  EXPECT_GT(c.force_b.z(), 0.0);
  EXPECT_EQ(c.force_b.head<2>(), Eigen::Vector2d::Zero());
}

TEST(Collision, CriticallyDampedImpactDoesNotRebound) {
  // Two unbonded voxels approach head on without gravity.
  Scene s = scenes::single_voxel();
  const MaterialDef mat = s.object.palette().at(1);
  s.object = VoxelObject(0.001, 5, 1, 1);
  const int m = s.object.add_material(mat);
  s.object.set_voxel(0, 0, 0, m);
  s.object.set_voxel(4, 0, 0, m);
  s.environment.gravity_enabled = false;
  s.sim.self_collision = true;
  s.sim.zeta_collision = 1.0;
  s.sim.collision_scheme = CollisionScheme::AllEvery;
  s.sim.fallback_dt = 1e-6;
  Simulation sim(s);
  const double v = 0.5;
  sim.states()[0].linear_momentum = Vec3(v, 0, 0) * sim.states()[0].mass;
  sim.states()[1].linear_momentum = Vec3(-v, 0, 0) * sim.states()[1].mass;
  const Vec3 p0 = sim.total_linear_momentum();

  bool touched = false;
  double min_closing = 0.0;
  for (int i = 0; i < 20000; ++i) {
    sim.step();
    const double gap = (sim.states()[1].position - sim.states()[0].position).norm();
    touched = touched || gap < 0.001;
    const double closing = (sim.states()[0].velocity() - sim.states()[1].velocity()).x();
    min_closing = std::min(min_closing, closing);
    EXPECT_LT((sim.total_linear_momentum() - p0).norm(), 1e-18);
  }
  EXPECT_TRUE(touched);
  // Separating speed after a critically damped contact stays far below the
  // impact speed.
  EXPECT_GT(min_closing, -0.2 * 2.0 * v);
}

TEST(Friction, ScenarioFromRest) {
  Simulation sim(scenes::friction_block());
  for (int i = 0; i < 20000; ++i) sim.step();
  for (int v = 0; v < sim.topology().voxel_count(); ++v) {
    EXPECT_TRUE(sim.floor_contacts()[v].in_contact);
    EXPECT_TRUE(sim.floor_contacts()[v].latched);
    EXPECT_NEAR(sim.floor_contacts()[v].normal_force, sim.states()[v].mass * 9.81, 1e-3 * sim.states()[v].mass * 9.81);
  }
  // Below the static limit the block does not creep.
  const Vec3 before = sim.states()[0].position;
  for (VoxelState& s : sim.states()) s.ext_force = Vec3(0.5 * 0.6 * s.mass * 9.81, 0, 0);
  for (int i = 0; i < 5000; ++i) sim.step();
  EXPECT_EQ(sim.states()[0].position.x(), before.x());
  EXPECT_EQ(sim.states()[0].position.y(), before.y());
}

#include "voxsim/oracle.hpp"
#include "voxsim/log.hpp"
#include "voxsim/scenes.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace voxsim;

namespace {

// Root of cosh(x) cos(x) + 1 between lo and hi by plain bisection.
double bisect_mode_root(double lo, double hi) {
  auto f = [](double x) { return std::cosh(x) * std::cos(x) + 1.0; };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(lo) < 0.0) == (f(mid) < 0.0)) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> sinusoid(std::initializer_list<std::pair<double, double>> parts, int n, double dt) {
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (auto [f, a] : parts) x[i] += a * std::sin(2.0 * std::numbers::pi * f * i * dt + 0.3);
  return x;
}

struct QuietWarnings {
  WarningHandler previous = set_warning_handler([](std::string_view) {});
  ~QuietWarnings() { set_warning_handler(previous); }
};

}  // namespace

TEST(ModeFactors, MatchBisectedRoots) {
  const std::vector<double> k = cantilever_mode_factors(8);
  ASSERT_EQ(k.size(), 8u);
  for (int n = 1; n <= 8; ++n) {
    const double root = bisect_mode_root((n - 1) * std::numbers::pi + 0.1, n * std::numbers::pi);
    EXPECT_NEAR(k[n - 1], root * root, 2e-5 * root * root) << n;
  }
}

TEST(ModeFactors, FrequenciesScale) {
  const double E = 1e6, I = 1e-12 / 12.0, m = 1e-3, L = 0.02;
  const auto f = analytic_natural_frequencies(E, I, m, L, 6);
  const auto heavy = analytic_natural_frequencies(E, I, 4.0 * m, L, 6);
  const auto longer = analytic_natural_frequencies(E, I, m, 2.0 * L, 6);
  for (int n = 0; n < 6; ++n) {
    EXPECT_NEAR(heavy[n], 0.5 * f[n], 1e-9 * f[n]);
    EXPECT_NEAR(longer[n], 0.25 * f[n], 1e-9 * f[n]);
  }
  EXPECT_NEAR(f[0], 3.5160 * std::sqrt(E * I / (m * std::pow(L, 4))) / (2.0 * std::numbers::pi), 1e-9 * f[0]);
  const double mbar = mass_per_length_for_first_mode(389.0, E, I, L);
  EXPECT_NEAR(analytic_natural_frequencies(E, I, mbar, L, 1)[0], 389.0, 1e-9);
}

TEST(Analytic, CubicInLength) {
  const double d = analytic_cantilever_deflection(3e-5, 0.019, 1e6, 1e-12 / 12.0);
  EXPECT_NEAR(d, 3e-5 * std::pow(0.019, 3) / (3.0 * 1e6 * 1e-12 / 12.0), 1e-18);
  EXPECT_NEAR(analytic_cantilever_deflection(3e-5, 0.038, 1e6, 1e-12 / 12.0), 8.0 * d, 1e-15);
}

TEST(ElementStiffness, SymmetricAndRigidModesFree) {
  const BeamConstants k = beam_constants(1e6, 1e6 / 2.6, 0.001);
  const Eigen::Matrix<double, 12, 12> K = element_stiffness(k);
  EXPECT_LT((K - K.transpose()).norm(), 1e-12 * K.norm());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 12, 12>> eig(K);
  // Six rigid modes, six stiff ones.
  int zero = 0;
  for (int i = 0; i < 12; ++i) {
    EXPECT_GT(eig.eigenvalues()[i], -1e-9 * K.norm());
    if (std::abs(eig.eigenvalues()[i]) < 1e-9 * K.norm()) ++zero;
  }
  EXPECT_EQ(zero, 6);
}

TEST(DirectStiffness, ZeroLoadGivesZeroDisplacement) {
  const Scene s = scenes::thin_cantilever(0.0);
  const StaticSolution sol = solve_direct_stiffness(s.object, s.environment);
  EXPECT_EQ(sol.max_displacement(), 0.0);
  EXPECT_EQ(sol.dof_count, 19 * 6);
}

TEST(DirectStiffness, ThinBeamMatchesBeamTheory) {
  const Scene s = scenes::thin_cantilever();
  const StaticSolution sol = solve_direct_stiffness(s.object, s.environment);
  const double analytic = analytic_cantilever_deflection(3e-5, 0.019, 1e6, 1e-12 / 12.0);
  EXPECT_NEAR(sol.max_deflection(), analytic, 0.005 * analytic);
  EXPECT_LT(sol.displacement.back().z(), 0.0);
  EXPECT_LT(sol.residual_norm, 1e-12);
}

TEST(DirectStiffness, LinearInLoad) {
  const Scene a = scenes::thick_cantilever(0.1), b = scenes::thick_cantilever(0.3);
  const double da = solve_direct_stiffness(a.object, a.environment).max_deflection();
  const double db = solve_direct_stiffness(b.object, b.environment).max_deflection();
  EXPECT_NEAR(db, 3.0 * da, 1e-9 * db);
}

TEST(DirectStiffness, UnsupportedStructureThrows) {
  QuietWarnings quiet;
  Scene s = scenes::thin_cantilever();
  s.environment.regions.erase(s.environment.regions.begin());
  EXPECT_THROW(solve_direct_stiffness(s.object, s.environment), SolverError);

  // A voxel floating apart from the supported beam.
  Scene d = scenes::thin_cantilever();
  const MaterialDef mat = d.object.palette().at(1);
  d.object = VoxelObject(0.001, 20, 1, 3);
  const int m = d.object.add_material(mat);
  d.object.fill({0, 0, 0}, {20, 1, 1}, m);
  d.object.set_voxel(10, 0, 2, m);
  EXPECT_THROW(solve_direct_stiffness(d.object, d.environment), SolverError);
}

TEST(Spectrum, SinglePeakWithinOneBin) {
  const double dt = 1e-5;
  const int n = 10000;
  const auto x = sinusoid({{400.0, 1.0}}, n, dt);
  const auto peaks = spectrum_peaks(x, dt, 1);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_NEAR(peaks[0].frequency, 400.0, 1.0 / (n * dt));
  const auto mag = magnitude_spectrum(x);
  EXPECT_EQ(mag.size(), static_cast<std::size_t>(n / 2 + 1));
}

TEST(Spectrum, SixModesWithinOnePercent) {
  const double dt = 1e-5;
  const int n = 20000;
  const auto x = sinusoid({{404, 1.0}, {2530, 0.5}, {7090, 0.3}, {13890, 0.2}, {22960, 0.1}, {34290, 0.08}}, n, dt);
  const auto peaks = spectrum_peaks(x, dt, 6);
  ASSERT_EQ(peaks.size(), 6u);
  const double expected[] = {404, 2530, 7090, 13890, 22960, 34290};
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(peaks[i].mode, i + 1);
    EXPECT_NEAR(peaks[i].frequency, expected[i], 0.01 * expected[i]);
  }
}

TEST(Spectrum, AmplitudeScaleInvariant) {
  const double dt = 1e-5;
  auto x = sinusoid({{700, 1.0}, {3100, 0.4}}, 8000, dt);
  const auto a = spectrum_peaks(x, dt, 2);
  for (double& v : x) v *= 1e-7;
  const auto b = spectrum_peaks(x, dt, 2);
  ASSERT_EQ(a.size(), 2u);
  ASSERT_EQ(b.size(), 2u);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(a[i].frequency, b[i].frequency, 1e-9 * a[i].frequency);
}

TEST(Spectrum, TooFewPeaksWarns) {
  int warnings = 0;
  const WarningHandler previous = set_warning_handler([&](std::string_view) { ++warnings; });
  // A clean tone over a white noise floor has exactly one resonance.
  auto x = sinusoid({{400.0, 1.0}}, 4000, 1e-5);
  std::mt19937 rng(9);
  std::normal_distribution<double> noise(0.0, 0.05);
  for (double& v : x) v += noise(rng);
  const auto peaks = spectrum_peaks(x, 1e-5, 3);
  set_warning_handler(previous);
  EXPECT_EQ(peaks.size(), 1u);
  EXPECT_EQ(warnings, 1);
}

#include "voxsim/oracle.hpp"

#include "voxsim/log.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

namespace voxsim {

double StaticSolution::max_displacement() const {
  double m = 0.0;
  for (const Vec3& d : displacement) m = std::max(m, d.norm());
  return m;
}

double StaticSolution::max_deflection() const {
  double m = 0.0;
  for (const Vec3& d : displacement) m = std::max(m, std::abs(d.z()));
  return m;
}

Eigen::Matrix<double, 12, 12> element_stiffness(const BeamConstants& k) {
  Eigen::Matrix<double, 12, 12> K = Eigen::Matrix<double, 12, 12>::Zero();
  auto set = [&](int i, int j, double v) {
    K(i, j) = v;
    K(j, i) = v;
  };
  // axial
  set(0, 0, k.a1);
  set(6, 6, k.a1);
  set(0, 6, -k.a1);
  // torsion
  set(3, 3, k.a2);
  set(9, 9, k.a2);
  set(3, 9, -k.a2);
  // bending in the x-y plane (v, rz)
  set(1, 1, k.b1);
  set(7, 7, k.b1);
  set(1, 7, -k.b1);
  set(1, 5, k.b2);
  set(1, 11, k.b2);
  set(5, 7, -k.b2);
  set(7, 11, -k.b2);
  set(5, 5, 2.0 * k.b3);
  set(11, 11, 2.0 * k.b3);
  set(5, 11, k.b3);
  // bending in the x-z plane (w, ry)
  set(2, 2, k.b1);
  set(8, 8, k.b1);
  set(2, 8, -k.b1);
  set(2, 4, -k.b2);
  set(2, 10, -k.b2);
  set(4, 8, k.b2);
  set(8, 10, k.b2);
  set(4, 4, 2.0 * k.b3);
  set(10, 10, 2.0 * k.b3);
  set(4, 10, k.b3);
  return K;
}

Eigen::Matrix<double, 12, 12> element_stiffness_global(const Bond& bond) {
  // Columns of R are the local axes expressed in global coordinates.
  Eigen::Matrix3d R;
  switch (bond.axis) {
    case Axis::X: R.setIdentity(); break;
    case Axis::Y: R << 0, -1, 0, 1, 0, 0, 0, 0, 1; break;
    case Axis::Z: R << 0, 0, -1, 0, 1, 0, 1, 0, 0; break;
  }
  Eigen::Matrix<double, 12, 12> T = Eigen::Matrix<double, 12, 12>::Zero();
  for (int b = 0; b < 4; ++b) T.block<3, 3>(3 * b, 3 * b) = R.transpose();
  return T.transpose() * element_stiffness(bond.k) * T;
}

StaticSolution solve_direct_stiffness(const VoxelObject& object, const Environment& env) {
  const LatticeTopology topo = build_topology(object);
  const ResolvedRegions regions = resolve_regions(object, env);
  const int n = topo.voxel_count();

  // Every voxel must be tied to ground through some chain of bonds.
  std::vector<bool> grounded(static_cast<std::size_t>(n), false);
  std::queue<int> frontier;
  for (int v = 0; v < n; ++v)
    if (regions.fixed[v]) {
      grounded[v] = true;
      frontier.push(v);
    }
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int b : topo.voxel_bonds[v]) {
      const int w = topo.bonds[b].voxel_a == v ? topo.bonds[b].voxel_b : topo.bonds[b].voxel_a;
      if (!grounded[w]) {
        grounded[w] = true;
        frontier.push(w);
      }
    }
  }
  for (int v = 0; v < n; ++v)
    if (!grounded[v]) {
      std::ostringstream msg;
      msg << "voxel " << v << " is not connected to any fixed voxel; stiffness matrix is singular";
      throw SolverError(msg.str());
    }

  std::vector<int> first_dof(static_cast<std::size_t>(n), -1);
  int dofs = 0;
  for (int v = 0; v < n; ++v)
    if (!regions.fixed[v]) {
      first_dof[v] = dofs;
      dofs += 6;
    }

  StaticSolution sol;
  sol.dof_count = dofs;
  sol.displacement.assign(static_cast<std::size_t>(n), Vec3::Zero());
  sol.rotation.assign(static_cast<std::size_t>(n), Vec3::Zero());
  if (dofs == 0) return sol;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(topo.bonds.size() * 144);
  for (const Bond& bond : topo.bonds) {
    const Eigen::Matrix<double, 12, 12> Kg = element_stiffness_global(bond);
    const int base[2] = {first_dof[bond.voxel_a], first_dof[bond.voxel_b]};
    for (int i = 0; i < 12; ++i) {
      if (base[i / 6] < 0) continue;
      for (int j = 0; j < 12; ++j) {
        if (base[j / 6] < 0 || Kg(i, j) == 0.0) continue;
        triplets.emplace_back(base[i / 6] + i % 6, base[j / 6] + j % 6, Kg(i, j));
      }
    }
  }
  Eigen::SparseMatrix<double> K(dofs, dofs);
  K.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::VectorXd f = Eigen::VectorXd::Zero(dofs);
  const double g = env.gravity_enabled ? env.gravity : 0.0;
  for (int v = 0; v < n; ++v) {
    if (first_dof[v] < 0) continue;
    Vec3 load = regions.ext_force[v];
    load.z() -= g * voxel_mass(object.palette().at(topo.voxels[v].material), topo.lattice_dim);
    f.segment<3>(first_dof[v]) = load;
  }

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(K);
  if (solver.info() != Eigen::Success) throw SolverError("factorization of the stiffness matrix failed");
  if ((solver.vectorD().array() <= 0.0).any()) throw SolverError("stiffness matrix is not positive definite");
  const Eigen::VectorXd u = solver.solve(f);
  if (solver.info() != Eigen::Success || !u.allFinite()) throw SolverError("linear solve failed");

  sol.residual_norm = (K * u - f).norm();
  for (int v = 0; v < n; ++v) {
    if (first_dof[v] < 0) continue;
    sol.displacement[v] = u.segment<3>(first_dof[v]);
    sol.rotation[v] = u.segment<3>(first_dof[v] + 3);
  }
  return sol;
}

double analytic_cantilever_deflection(double force, double length, double elastic_modulus, double area_moment) {
  return force * length * length * length / (3.0 * elastic_modulus * area_moment);
}

std::vector<double> cantilever_mode_factors(int count) {
  static constexpr double kTable[] = {3.5160, 22.0345, 61.6972, 120.9019, 199.8595, 298.5555};
  std::vector<double> k;
  for (int n = 1; n <= count; ++n) {
    if (n <= 6) {
      k.push_back(kTable[n - 1]);
    } else {
      const double beta_l = (2.0 * n - 1.0) * M_PI / 2.0;
      k.push_back(beta_l * beta_l);
    }
  }
  return k;
}

std::vector<double> analytic_natural_frequencies(double elastic_modulus, double area_moment, double mass_per_length,
                                                 double length, int count) {
  const double scale =
      std::sqrt(elastic_modulus * area_moment / (mass_per_length * std::pow(length, 4))) / (2.0 * M_PI);
  std::vector<double> f = cantilever_mode_factors(count);
  for (double& v : f) v *= scale;
  return f;
}

double mass_per_length_for_first_mode(double f1, double elastic_modulus, double area_moment, double length) {
  const double k1 = cantilever_mode_factors(1).front();
  const double root = 2.0 * M_PI * f1 / k1;
  return elastic_modulus * area_moment / (root * root * std::pow(length, 4));
}

std::vector<double> magnitude_spectrum(std::span<const double> samples) {
  const int n = static_cast<int>(samples.size());
  if (n < 2) return {};
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;

  double* in = fftw_alloc_real(static_cast<std::size_t>(n));
  fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
  fftw_plan plan = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
  for (int i = 0; i < n; ++i) in[i] = samples[i] - mean;
  fftw_execute(plan);

  std::vector<double> mag(static_cast<std::size_t>(n / 2 + 1));
  for (int k = 0; k <= n / 2; ++k) mag[k] = std::hypot(out[k][0], out[k][1]);
  fftw_destroy_plan(plan);
  fftw_free(in);
  fftw_free(out);
  return mag;
}

std::vector<ModalEstimate> spectrum_peaks(std::span<const double> samples, double dt, int n_peaks) {
  const std::vector<double> mag = magnitude_spectrum(samples);
  std::vector<ModalEstimate> peaks;
  if (mag.size() < 4 || n_peaks <= 0) return peaks;

  std::vector<double> sorted(mag.begin() + 1, mag.end());
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double threshold = 10.0 * sorted[sorted.size() / 2];
  const double bin_hz = 1.0 / (static_cast<double>(samples.size()) * dt);
  const int last = static_cast<int>(mag.size()) - 1;

  for (int k = 1; k < last; ++k) {
    if (mag[k] <= threshold || mag[k] < mag[k - 1] || mag[k] < mag[k + 1]) continue;
    const int reach = std::max(3, static_cast<int>(std::lround(0.15 * k)));
    const int lo = std::max(1, k - reach), hi = std::min(last, k + reach);
    bool dominant = true;
    for (int j = lo; j <= hi && dominant; ++j) dominant = (j == k) || mag[j] < mag[k];
    if (!dominant) continue;

    const double left = mag[k - 1], mid = mag[k], right = mag[k + 1];
    const double denom = left - 2.0 * mid + right;
    const double offset = denom != 0.0 ? 0.5 * (left - right) / denom : 0.0;
    peaks.push_back({0, (k + offset) * bin_hz, mid - 0.25 * (left - right) * offset});
  }

  std::sort(peaks.begin(), peaks.end(), [](const auto& a, const auto& b) { return a.amplitude > b.amplitude; });
  if (static_cast<int>(peaks.size()) > n_peaks) peaks.resize(static_cast<std::size_t>(n_peaks));
  std::sort(peaks.begin(), peaks.end(), [](const auto& a, const auto& b) { return a.frequency < b.frequency; });
  for (std::size_t i = 0; i < peaks.size(); ++i) peaks[i].mode = static_cast<int>(i) + 1;

  if (static_cast<int>(peaks.size()) < n_peaks) {
    std::ostringstream msg;
    msg << "spectrum_peaks: found " << peaks.size() << " of " << n_peaks << " requested peaks";
    warn(msg.str());
  }
  return peaks;
}

}  // namespace voxsim

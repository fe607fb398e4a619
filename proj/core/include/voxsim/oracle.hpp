#pragma once

#include "voxsim/bonds.hpp"
#include "voxsim/model.hpp"
#include "voxsim/types.hpp"

#include <span>
#include <vector>

namespace voxsim {

// Independent checks on the dynamic simulator: a linear static solve over
// the same beam graph, textbook cantilever formulas, and a spectral peak
// picker for modal analysis of time series.

/// Six DOF per voxel, ordered (ux, uy, uz, rx, ry, rz).
struct StaticSolution {
  std::vector<Vec3> displacement;
  std::vector<Vec3> rotation;
  double residual_norm = 0.0;
  int dof_count = 0;

  /// Largest translational displacement magnitude over all voxels.
  double max_displacement() const;
  /// Largest vertical (z) displacement magnitude, the usual cantilever
  /// tip-deflection measure.
  double max_deflection() const;
};

/// Element stiffness matrix of a bond in its own frame (bond along +x),
/// DOF order (u1 v1 w1 rx1 ry1 rz1 u2 v2 w2 rx2 ry2 rz2).
Eigen::Matrix<double, 12, 12> element_stiffness(const BeamConstants& k);

/// Same matrix rotated into the global frame for a bond along `axis`.
Eigen::Matrix<double, 12, 12> element_stiffness_global(const Bond& bond);

/// Assembles the global stiffness, eliminates the DOFs of fixed voxels,
/// applies the equally divided region forces and solves the linear system.
/// Throws SolverError if some free part of the structure is not connected
/// to a fixed voxel or the factorization fails.
StaticSolution solve_direct_stiffness(const VoxelObject& object, const Environment& env);

/// Tip deflection F L^3 / (3 E I) of an end-loaded cantilever.
double analytic_cantilever_deflection(double force, double length, double elastic_modulus, double area_moment);

/// Cantilever mode factors K_n = (beta_n L)^2, n = 1..count. Uses the
/// tabulated roots of cosh(x) cos(x) = -1 for the first six modes and
/// (2n - 1) pi / 2 beyond.
std::vector<double> cantilever_mode_factors(int count);

/// Natural frequencies in Hz: K_n sqrt(E I / (m_bar L^4)) / (2 pi).
std::vector<double> analytic_natural_frequencies(double elastic_modulus, double area_moment,
                                                 double mass_per_length, double length, int count);

/// Mass per unit length giving a first cantilever mode at f1 Hz.
double mass_per_length_for_first_mode(double f1, double elastic_modulus, double area_moment, double length);

struct ModalEstimate {
  int mode = 0;             // 1-based, ascending frequency
  double frequency = 0.0;   // Hz
  double amplitude = 0.0;
};

/// One-sided DFT magnitude of a real series (rectangular window, mean
/// removed). Bin k is at k / (n dt) Hz.
std::vector<double> magnitude_spectrum(std::span<const double> samples);

/// Resonance peaks of a uniformly sampled signal, lowest frequency first.
///
/// A bin qualifies when it exceeds 10x the median magnitude and is the
/// largest bin within +/-15% of its own frequency (at least +/-3 bins),
/// which rejects the leakage sidelobes of a rectangular window. The
/// frequency is refined by a parabola through the peak bin and its two
/// neighbours. When fewer than n_peaks qualify, the ones found are returned
/// and a warning is issued.
std::vector<ModalEstimate> spectrum_peaks(std::span<const double> samples, double dt, int n_peaks);

}  // namespace voxsim

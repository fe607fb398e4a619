#pragma once

// Randomized and long-run invariant checks. Used by the gtest property
// suite and by the acceptance report, so both judge the same evidence.

#include <string>

namespace voxsim::testing {

struct PropertyResult {
  bool pass = false;
  double worst = 0.0;  // worst observed value of the checked quantity
  double limit = 0.0;
  std::string detail;
};

/// F_a == -F_b exactly and M_a + M_b + (D_b - D_a) x F_b == 0 relative to
/// the load scale, for random small deformations of randomly oriented
/// bonds between random materials, elastic plus damping loads.
PropertyResult bond_equilibrium(int cases, double rel_tol, unsigned seed = 7);

/// Free undamped cube with random initial momenta: per-step change of
/// total linear momentum against tol * (sum |P| + eps).
PropertyResult momentum_drift(long steps, double tol, unsigned seed = 11);

/// Largest damping force (N) or moment (N m) produced by random rigid
/// translations and rotations of random bond pairs.
PropertyResult rigid_damping_nullity(int cases, double tol, unsigned seed = 13);

/// Free homogeneous cube brought quasi-statically to T_r + delta; every
/// bond length against l (1 + cte delta).
PropertyResult thermal_expansion(double cte, double delta, double rel_tol);

/// dt sqrt(k_b / m_min) <= dt_safety / (2 pi) for every bond at every step
/// of a short clapper run and a heterogeneous block.
PropertyResult timestep_bound(long steps);

/// Two runs of the clapper scene compared bit for bit.
PropertyResult determinism(long steps);

}  // namespace voxsim::testing

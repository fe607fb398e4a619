#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <stdexcept>
#include <string>

namespace voxsim {

using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

/// Rejected input while building a model or scene (bad material, malformed region).
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scene document failed to parse or validate. The message starts with a
/// JSON pointer to the offending field.
class SceneError : public std::runtime_error {
 public:
  SceneError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Unrecoverable physical fault during a run (e.g. a bond rest length
/// driven to zero by thermal contraction).
class SimulationFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// NaN or infinity appeared in the state.
class DivergenceError : public SimulationFault {
 public:
  DivergenceError(int voxel, long step, const std::string& what)
      : SimulationFault(what), voxel_(voxel), step_(step) {}
  int voxel() const noexcept { return voxel_; }
  long step() const noexcept { return step_; }

 private:
  int voxel_;
  long step_;
};

/// Linear solve in the static oracle failed (singular or under-constrained).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace voxsim

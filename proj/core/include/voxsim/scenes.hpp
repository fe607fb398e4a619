#pragma once

#include "voxsim/scene.hpp"

#include <string>
#include <vector>

namespace voxsim::scenes {

// Built-in scenes used by validation, benchmarks and demos. All use 1 mm
// voxels unless noted.

/// 20x1x1 beam along +x, 1 MPa. Voxel x=0 fixed, 0.03 mN downward on x=19.
Scene thin_cantilever(double tip_force = 3e-5);

/// 10x5x5 block along +x, 1 MPa. Plane x=0 fixed, 0.1 N downward split over
/// the x=9 plane.
Scene thick_cantilever(double tip_force = 0.1);

/// 5 x 10 x 5 beam of 10 MPa material cantilevered from its -Y plane with
/// 1 kN downward on its +Y plane and ground damping 0.013.
Scene appendix_cantilever();

/// Thin beam for modal tests: no load, no gravity, and the given density.
/// Only the rotational bond damping is on, at 0.01.
Scene modal_beam(double density);

/// Density that puts the analytic first mode of a 20 mm cantilever with the
/// thin beam's section at f1 Hz.
double modal_beam_density(double f1 = 389.0);

/// Two opposed bilayer arms on a common fixed base. The inner layer of each
/// arm has cte -0.02, the outer +0.02, and the temperature swings +/-30 C,
/// so the arms bend toward each other, collide, and separate each cycle.
Scene clapper();

/// Solid n x n x n cube of 1 MPa material, free, gravity and floor off.
Scene cube(int n);

/// 2x2x1 block of 1 MPa material resting on the floor, mu_s 0.6 /
/// mu_d 0.4, gravity on.
Scene friction_block();

/// Smallest valid scene: one voxel, one material.
Scene single_voxel();

/// Names accepted by by_name().
std::vector<std::string> names();
/// Throws std::invalid_argument listing names() for unknown names.
Scene by_name(const std::string& name);

}  // namespace voxsim::scenes

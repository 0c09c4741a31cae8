#pragma once

#include <vector>

#include "vi/baselines.hpp"
#include "vi/systems.hpp"

namespace vi {

struct ReferenceSolution {
  PhaseState z;
  // Whether halving the step changed the result by less than 1e-12.
  bool verified = false;
  double richardson_change = 0.0;
};

/// rk4 with step T / 2^20, checked against step T / 2^19.
ReferenceSolution reference_solution(const LagrangianSystem& sys, const PhaseState& z0, double T);

/// rk4 on the rigid body with `steps` uniform steps.
RigidBodyState reference_rigidbody(const RigidBody& body, const RigidBodyState& s0, double T,
                                   int steps = 1 << 16);

/// Body angular velocity at ascending `times` (all >= 0), from rk4 on Euler's
/// equations with steps no longer than `max_step`.
std::vector<Vec3> reference_body_velocity(const RigidBody& body, const Vec3& omega0,
                                          const std::vector<double>& times, double max_step = 1e-4);

}  // namespace vi

#pragma once

#include "vi/liegroup.hpp"
#include "vi/numerics.hpp"

namespace vi {

/// Attitude and body angular velocity. R is a plain matrix because the
/// Runge-Kutta baselines let it drift off the group.
struct RigidBodyState {
  Mat3 R = Mat3::Identity();
  Vec3 omega = Vec3::Zero();
};

/// Euler's equations J^{-1} (J Omega x Omega).
Vec3 euler_rhs(const RigidBody& body, const Vec3& omega);

// The Runge-Kutta baselines integrate R' = R S(Omega) together with Euler's
// equations on 12 reals (R row-major, then Omega), without reprojection.
Eigen::Matrix<double, 12, 1> embed(const RigidBodyState& s);
RigidBodyState unembed(const Eigen::Matrix<double, 12, 1>& y);
Eigen::Matrix<double, 12, 1> embedded_rhs(const RigidBody& body, const Eigen::Matrix<double, 12, 1>& y);

RigidBodyState baseline_explicit_midpoint(const RigidBody& body, const RigidBodyState& s, double h);

/// Stage equation solved by Newton to `cfg.tol`.
RigidBodyState baseline_implicit_midpoint(const RigidBody& body, const RigidBodyState& s, double h,
                                          const NewtonConfig& cfg = {}, int* iterations = nullptr);

/// Two-stage Crouch-Grossman method of order 2. Stages at 0 and 1 with
/// weights 1/2, 1/2:
///   Omega_1 = Omega, Omega_2 = Omega + h f(Omega_1),
///   R+ = R exp(h/2 Omega_1) exp(h/2 Omega_2),
///   Omega+ = Omega + h/2 (f(Omega_1) + f(Omega_2)).
RigidBodyState baseline_crouch_grossman(const RigidBody& body, const RigidBodyState& s, double h);

/// rk4 on the 12-real embedding.
RigidBodyState rigid_body_rk4(const RigidBody& body, const RigidBodyState& s, double h);

}  // namespace vi

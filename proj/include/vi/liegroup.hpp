#pragma once

#include <functional>
#include <vector>

#include "vi/geometry.hpp"
#include "vi/numerics.hpp"

namespace vi {

/// (1/2) tr(J) I - J
Mat3 jd_from_j(const Mat3& j);
/// tr(J_d) I - J_d
Mat3 j_from_jd(const Mat3& jd);

/// Free rigid body with standard inertia J and nonstandard inertia J_d.
struct RigidBody {
  Mat3 J;
  Mat3 Jd;

  /// Throws InvalidSpec unless J is symmetric positive-definite.
  static RigidBody from_inertia(const Mat3& j);
};

/// (1/h) tr((I - F) J_d)
double lgvi_ld(const Rotation& f, const Mat3& jd, double h);

enum class RotationMap { exp, cayley };

struct SolveFResult {
  Rotation F;
  int iterations = 0;
  double residual = 0.0;  // ||F J_d - J_d F^T - S(g)||_F
};

/// Newton tolerance used by the rigid-body solvers.
inline constexpr double kRigidBodyTol = 1e-15;

NewtonConfig rigid_body_newton();

/// Solves F J_d - J_d F^T = S(g) for F in SO(3), parametrizing F by the
/// exponential or the Cayley map. Throws NoConvergence.
SolveFResult solve_F(const Vec3& g, const RigidBody& body, RotationMap map,
                     const NewtonConfig& cfg = rigid_body_newton());

struct LgviState {
  Rotation R;
  Rotation F;
  double h = 0.0;
};

/// F_0 from g = h J Omega0.
LgviState lgvi_init(const Vec3& omega0, const RigidBody& body, double h, RotationMap map,
                    const Rotation& r0 = Rotation::identity(), const NewtonConfig& cfg = rigid_body_newton(),
                    int* iterations = nullptr);

/// g = vee(J_d F_k - F_k^T J_d), F_{k+1} = solve_F(g), R_{k+1} = R_k F_k.
LgviState lgvi_step(const LgviState& state, const RigidBody& body, RotationMap map,
                    const NewtonConfig& cfg = rigid_body_newton(), int* iterations = nullptr);

/// R_k vee(F_k J_d - J_d F_k^T) / h
Vec3 lgvi_spatial_momentum(const LgviState& state, const RigidBody& body);

/// vee(log F) / h
Vec3 body_velocity(const Rotation& f, double h);

/// (1/2) Omega . J Omega
double rigid_body_energy(const RigidBody& body, const Vec3& omega);

// Discrete Euler-Poincare integrators from a reduced discrete Lagrangian
// l_d(f) = h sum_i b_i l(eta(c_i h)), where xi(tau h) interpolates control
// points xi^0 = 0, ..., xi^s = log f and eta = dexp_{-ad xi}(xi').
// Group elements follow f_k = g_k^{-1} g_{k+1}.
struct DepConfig {
  int s = 1;
  std::vector<double> control_times;
  QuadratureRule rule;
  std::function<double(const Vec3&)> l;
  std::function<Vec3(const Vec3&)> dl_deta;
  NewtonConfig newton;
  double fd_step = NewtonConfig::default_fd_step();
  // Solve for internal points with the closed-form stationarity condition
  // sum_i b_i ddexp_{ad xi}^T (dl/deta) l'_nu(c_i) = 0 instead of
  // extremizing l_d numerically.
  bool printed_condition = false;
};

/// l(eta) = (1/2) eta . J eta with uniform control times, 1 <= s <= 3.
DepConfig make_rigid_body_dep_config(int s, QuadratureRule rule, const RigidBody& body);

struct DepLd {
  double value = 0.0;
  std::vector<Vec3> internal;  // xi^1 .. xi^{s-1}
  int iterations = 0;
};

/// Body velocity of g0 exp(xi(t)) at tau h.
Vec3 dep_body_velocity(const DepConfig& cfg, const std::vector<Vec3>& points, double tau, double h);

/// Reduced action for given control points xi^0..xi^s.
double dep_action(const DepConfig& cfg, const std::vector<Vec3>& points, double h);

/// Gradient of dep_action with respect to the internal control points.
Vec dep_internal_gradient(const DepConfig& cfg, const std::vector<Vec3>& points, double h);

DepLd dep_reduced_ld(const DepConfig& cfg, const Rotation& f, double h,
                     const std::vector<Vec3>* warm = nullptr);

/// Right-trivialized derivative m(f) with m . delta = d/de l_d(exp(e delta) f).
Vec3 dep_momentum(const DepConfig& cfg, const Rotation& f, double h);

/// Solves m(f_next) = f_prev^T m(f_prev) for f_next, starting from f_prev.
Rotation dep_step(const DepConfig& cfg, const Rotation& f_prev, double h, int* iterations = nullptr);

/// Solves m(f_0) = J Omega0, starting from exp(h Omega0).
Rotation dep_init(const DepConfig& cfg, const RigidBody& body, const Vec3& omega0, double h);

}  // namespace vi

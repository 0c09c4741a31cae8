#include "vi/baselines.hpp"

namespace vi {

namespace {

using Vec12 = Eigen::Matrix<double, 12, 1>;

}  // namespace

Vec3 euler_rhs(const RigidBody& body, const Vec3& omega) {
  return body.J.ldlt().solve(Vec3((body.J * omega).cross(omega)));
}

Vec12 embed(const RigidBodyState& s) {
  Vec12 y;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) y[3 * i + j] = s.R(i, j);
  y.tail<3>() = s.omega;
  return y;
}

RigidBodyState unembed(const Vec12& y) {
  RigidBodyState s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s.R(i, j) = y[3 * i + j];
  s.omega = y.tail<3>();
  return s;
}

Vec12 embedded_rhs(const RigidBody& body, const Vec12& y) {
  const RigidBodyState s = unembed(y);
  return embed(RigidBodyState{s.R * hat(s.omega), euler_rhs(body, s.omega)});
}

RigidBodyState baseline_explicit_midpoint(const RigidBody& body, const RigidBodyState& s, double h) {
  const Vec12 y = embed(s);
  const Vec12 mid = y + 0.5 * h * embedded_rhs(body, y);
  return unembed(y + h * embedded_rhs(body, mid));
}

RigidBodyState baseline_implicit_midpoint(const RigidBody& body, const RigidBodyState& s, double h,
                                          const NewtonConfig& cfg, int* iterations) {
  const Vec12 y = embed(s);
  auto residual = [&](const Vec& y1) {
    const Vec12 mid = 0.5 * (y + Vec12(y1));
    return Vec(Vec12(y1) - y - h * embedded_rhs(body, mid));
  };
  const Vec12 guess = embed(baseline_explicit_midpoint(body, s, h));
  const NewtonResult sol = newton_solve(residual, Vec(guess), cfg);
  if (iterations) *iterations = sol.iterations;
  return unembed(Vec12(sol.x));
}

RigidBodyState baseline_crouch_grossman(const RigidBody& body, const RigidBodyState& s, double h) {
  const Vec3 w1 = s.omega;
  const Vec3 f1 = euler_rhs(body, w1);
  const Vec3 w2 = s.omega + h * f1;
  const Vec3 f2 = euler_rhs(body, w2);
  RigidBodyState out;
  out.R = s.R * exp_so3(0.5 * h * w1).matrix() * exp_so3(0.5 * h * w2).matrix();
  out.omega = s.omega + 0.5 * h * (f1 + f2);
  return out;
}

RigidBodyState rigid_body_rk4(const RigidBody& body, const RigidBodyState& s, double h) {
  const Vec12 y = embed(s);
  const Vec12 k1 = embedded_rhs(body, y);
  const Vec12 k2 = embedded_rhs(body, y + 0.5 * h * k1);
  const Vec12 k3 = embedded_rhs(body, y + 0.5 * h * k2);
  const Vec12 k4 = embedded_rhs(body, y + h * k3);
  return unembed(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace vi

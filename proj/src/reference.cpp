#include "vi/reference.hpp"

#include <cmath>

#include "vi/errors.hpp"
#include "vi/onestep.hpp"

namespace vi {

namespace {

PhaseState march(const LagrangianSystem& sys, const PhaseState& z0, double T, long steps) {
  const double h = T / static_cast<double>(steps);
  if (sys.has_hamiltonian()) {
    const OneStepMethod m = rk4(StateSpace::phase);
    PhaseState z = z0;
    for (long k = 0; k < steps; ++k) z = m.step(sys, z, h);
    return z;
  }
  const OneStepMethod m = rk4(StateSpace::tangent);
  TangentState z = inverse_legendre(sys, z0.q, z0.p);
  for (long k = 0; k < steps; ++k) z = m.step(sys, z, h);
  return legendre(sys, z.q, z.v);
}

double distance(const PhaseState& a, const PhaseState& b) {
  return std::sqrt((a.q - b.q).squaredNorm() + (a.p - b.p).squaredNorm());
}

}  // namespace

ReferenceSolution reference_solution(const LagrangianSystem& sys, const PhaseState& z0, double T) {
  if (T == 0.0) return ReferenceSolution{z0, true, 0.0};
  if (!(T > 0.0)) throw InvalidSpec("reference_solution: T must be positive");
  ReferenceSolution out;
  out.z = march(sys, z0, T, 1L << 20);
  out.richardson_change = distance(out.z, march(sys, z0, T, 1L << 19));
  out.verified = out.richardson_change < 1e-12;
  return out;
}

RigidBodyState reference_rigidbody(const RigidBody& body, const RigidBodyState& s0, double T, int steps) {
  RigidBodyState s = s0;
  if (T == 0.0) return s;
  const double h = T / steps;
  for (int k = 0; k < steps; ++k) s = rigid_body_rk4(body, s, h);
  return s;
}

std::vector<Vec3> reference_body_velocity(const RigidBody& body, const Vec3& omega0,
                                          const std::vector<double>& times, double max_step) {
  auto rk4_step = [&body](const Vec3& w, double h) {
    const Vec3 k1 = euler_rhs(body, w);
    const Vec3 k2 = euler_rhs(body, w + 0.5 * h * k1);
    const Vec3 k3 = euler_rhs(body, w + 0.5 * h * k2);
    const Vec3 k4 = euler_rhs(body, w + h * k3);
    return Vec3(w + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  };
  std::vector<Vec3> out;
  out.reserve(times.size());
  Vec3 w = omega0;
  double t = 0.0;
  for (double target : times) {
    if (target < t) throw InvalidSpec("reference_body_velocity: times must be ascending and non-negative");
    const long n = static_cast<long>(std::ceil((target - t) / max_step));
    const double h = n > 0 ? (target - t) / n : 0.0;
    for (long k = 0; k < n; ++k) w = rk4_step(w, h);
    t = target;
    out.push_back(w);
  }
  return out;
}

}  // namespace vi

#include "vi/systems.hpp"

#include <cmath>

#include "vi/errors.hpp"

namespace vi {

namespace {

Vec scalar(double x) { return Vec::Constant(1, x); }

// Unit-mass kinetic energy, shared by every builtin.
void add_unit_mass_kinetics(LagrangianSystem& sys) {
  sys.dL_dv = [](const Vec&, const Vec& v) { return Vec(v); };
  sys.dH_dp = [](const Vec&, const Vec& p) { return Vec(p); };
  sys.velocity_from_momentum = [](const Vec&, const Vec& p) { return Vec(p); };
}

}  // namespace

LagrangianSystem builtin_pendulum() {
  LagrangianSystem sys;
  sys.name = "pendulum";
  sys.dim = 1;
  add_unit_mass_kinetics(sys);
  sys.lagrangian = [](const Vec& q, const Vec& v) { return 0.5 * v[0] * v[0] + std::cos(q[0]); };
  sys.dL_dq = [](const Vec& q, const Vec&) { return scalar(-std::sin(q[0])); };
  sys.accel = [](const Vec& q, const Vec&) { return scalar(-std::sin(q[0])); };
  sys.energy = [](const Vec& q, const Vec& v) { return 0.5 * v[0] * v[0] - std::cos(q[0]); };
  sys.hamiltonian = [](const Vec& q, const Vec& p) { return 0.5 * p[0] * p[0] - std::cos(q[0]); };
  sys.dH_dq = [](const Vec& q, const Vec&) { return scalar(std::sin(q[0])); };
  return sys;
}

LagrangianSystem builtin_sho() {
  LagrangianSystem sys;
  sys.name = "sho";
  sys.dim = 1;
  add_unit_mass_kinetics(sys);
  sys.lagrangian = [](const Vec& q, const Vec& v) { return 0.5 * (v[0] * v[0] - q[0] * q[0]); };
  sys.dL_dq = [](const Vec& q, const Vec&) { return Vec(-q); };
  sys.accel = [](const Vec& q, const Vec&) { return Vec(-q); };
  sys.energy = [](const Vec& q, const Vec& v) { return 0.5 * (v[0] * v[0] + q[0] * q[0]); };
  sys.hamiltonian = [](const Vec& q, const Vec& p) { return 0.5 * (p[0] * p[0] + q[0] * q[0]); };
  sys.dH_dq = [](const Vec& q, const Vec&) { return Vec(q); };
  return sys;
}

LagrangianSystem builtin_free_particle(int dim) {
  if (dim < 1) throw InvalidSpec("free particle dimension must be at least 1");
  LagrangianSystem sys;
  sys.name = dim == 1 ? "free" : "free" + std::to_string(dim);
  sys.dim = dim;
  add_unit_mass_kinetics(sys);
  sys.lagrangian = [](const Vec&, const Vec& v) { return 0.5 * v.squaredNorm(); };
  sys.dL_dq = [](const Vec& q, const Vec&) { return Vec(Vec::Zero(q.size())); };
  sys.accel = [](const Vec& q, const Vec&) { return Vec(Vec::Zero(q.size())); };
  sys.energy = [](const Vec&, const Vec& v) { return 0.5 * v.squaredNorm(); };
  sys.hamiltonian = [](const Vec&, const Vec& p) { return 0.5 * p.squaredNorm(); };
  sys.dH_dq = [](const Vec& q, const Vec&) { return Vec(Vec::Zero(q.size())); };
  for (int j = 0; j < dim; ++j) {
    sys.symmetry_generators.push_back([j](const Vec& q) {
      Vec e = Vec::Zero(q.size());
      e[j] = 1.0;
      return e;
    });
  }
  return sys;
}

LagrangianSystem builtin_coupled_pair() {
  LagrangianSystem sys;
  sys.name = "pair";
  sys.dim = 2;
  add_unit_mass_kinetics(sys);
  auto force = [](const Vec& q) {
    const double s = std::sin(q[0] - q[1]);
    Vec f(2);
    f << -s, s;
    return f;
  };
  sys.lagrangian = [](const Vec& q, const Vec& v) {
    return 0.5 * v.squaredNorm() + std::cos(q[0] - q[1]);
  };
  sys.dL_dq = [force](const Vec& q, const Vec&) { return force(q); };
  sys.accel = [force](const Vec& q, const Vec&) { return force(q); };
  sys.energy = [](const Vec& q, const Vec& v) { return 0.5 * v.squaredNorm() - std::cos(q[0] - q[1]); };
  sys.hamiltonian = [](const Vec& q, const Vec& p) {
    return 0.5 * p.squaredNorm() - std::cos(q[0] - q[1]);
  };
  sys.dH_dq = [force](const Vec& q, const Vec&) { return Vec(-force(q)); };
  sys.symmetry_generators.push_back([](const Vec&) { return Vec(Vec::Ones(2)); });
  return sys;
}

LagrangianSystem builtin_system(const std::string& name) {
  if (name == "pendulum") return builtin_pendulum();
  if (name == "sho") return builtin_sho();
  if (name == "free") return builtin_free_particle(1);
  if (name == "free2") return builtin_free_particle(2);
  if (name == "free3") return builtin_free_particle(3);
  if (name == "pair") return builtin_coupled_pair();
  throw InvalidSpec("unknown system '" + name + "'");
}

PhaseState legendre(const LagrangianSystem& sys, const Vec& q, const Vec& v) {
  return {q, sys.dL_dv(q, v)};
}

TangentState inverse_legendre(const LagrangianSystem& sys, const Vec& q, const Vec& p,
                              const NewtonConfig& cfg) {
  if (sys.velocity_from_momentum) return {q, sys.velocity_from_momentum(q, p)};
  const auto res = newton_solve([&](const Vec& v) { return Vec(sys.dL_dv(q, v) - p); }, p, cfg);
  return {q, res.x};
}

double phase_energy(const LagrangianSystem& sys, const PhaseState& z) {
  if (sys.hamiltonian) return sys.hamiltonian(z.q, z.p);
  return sys.energy(z.q, inverse_legendre(sys, z.q, z.p).v);
}

}  // namespace vi

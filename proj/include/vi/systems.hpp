#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vi/numerics.hpp"

namespace vi {

/// Position and velocity.
struct TangentState {
  Vec q;
  Vec v;
};

/// Position and conjugate momentum.
struct PhaseState {
  Vec q;
  Vec p;
};

/// A mechanical model. Derivatives are supplied analytically.
///
/// `accel` is the Euler-Lagrange vector field in second-order form. The
/// Hamiltonian callables are optional; phase-space steppers and the
/// Hamiltonian shooting variants need them.
struct LagrangianSystem {
  using Scalar2 = std::function<double(const Vec&, const Vec&)>;
  using Vector2 = std::function<Vec(const Vec&, const Vec&)>;
  using Generator = std::function<Vec(const Vec&)>;

  std::string name;
  int dim = 0;
  Scalar2 lagrangian;
  Vector2 dL_dq;
  Vector2 dL_dv;
  Vector2 accel;
  Scalar2 energy;  // (q, v)

  Scalar2 hamiltonian;  // (q, p)
  Vector2 dH_dq;
  Vector2 dH_dp;

  // Closed-form v(q, p) when available; inverse_legendre falls back to Newton.
  Vector2 velocity_from_momentum;

  std::vector<Generator> symmetry_generators;

  bool has_hamiltonian() const { return hamiltonian && dH_dq && dH_dp; }
};

LagrangianSystem builtin_pendulum();
LagrangianSystem builtin_sho();
LagrangianSystem builtin_free_particle(int dim);

/// Two unit masses on a line coupled through the potential -cos(q1 - q2).
/// Invariant under the common translation (q1, q2) -> (q1 + a, q2 + a).
LagrangianSystem builtin_coupled_pair();

/// pendulum, sho, free, free2, free3, pair. Throws InvalidSpec otherwise.
LagrangianSystem builtin_system(const std::string& name);

PhaseState legendre(const LagrangianSystem& sys, const Vec& q, const Vec& v);
TangentState inverse_legendre(const LagrangianSystem& sys, const Vec& q, const Vec& p,
                              const NewtonConfig& cfg = {});

/// H(q, p) when the system has one, else the energy at the inverse-Legendre velocity.
double phase_energy(const LagrangianSystem& sys, const PhaseState& z);

}  // namespace vi

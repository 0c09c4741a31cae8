#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "vi/numerics.hpp"
#include "vi/onestep.hpp"
#include "vi/systems.hpp"

namespace vi {

/// Discrete Lagrangians built by shooting with a one-step method.
///
/// L_d(q0, q1; h) = h sum_i b_i L(q^i, v^i), where the node states come from
/// the one-step method started at (q0, v^0) over the quadrature nodes and v^0
/// is solved so that q^n = q1. D1 L_d and D2 L_d are central differences that
/// re-converge the boundary-value problem at every perturbed endpoint.
struct ShootingConfig {
  OneStepMethod method;
  QuadratureRule rule;
  NewtonConfig inner;  // boundary-value solve for v^0 (or p^0)
  NewtonConfig outer;  // discrete Legendre solve p0 = -D1 L_d
  double fd_step = NewtonConfig::default_fd_step();
};

/// inner: tol 1e-12 with one polishing step; outer: tol 1e-10 (above the
/// finite-difference floor of D1 L_d) with one polishing step.
ShootingConfig make_shooting_config(OneStepMethod method, QuadratureRule rule);

struct LdEvaluation {
  double value = 0.0;
  std::vector<TangentState> nodes;  // nodes.front() = (q0, v^0), nodes.back().q = q1
  int iterations = 0;

  const Vec& v0() const { return nodes.front().v; }
};

struct HamiltonianLdEvaluation {
  double value = 0.0;
  std::vector<PhaseState> nodes;
  int iterations = 0;

  const Vec& p0() const { return nodes.front().p; }
};

/// Quadrature sum along given node states; forms dL/dt at the endpoints for
/// derivative-augmented rules.
double shooting_action(const QuadratureRule& rule, const LagrangianSystem& sys,
                       const std::vector<TangentState>& nodes, double h);

/// Throws NoConvergence if the boundary-value problem does not converge.
LdEvaluation discrete_lagrangian(const ShootingConfig& cfg, const LagrangianSystem& sys, const Vec& q0,
                                 const Vec& q1, double h, std::optional<Vec> v_guess = std::nullopt);

Vec d1_ld(const ShootingConfig& cfg, const LagrangianSystem& sys, const Vec& q0, const Vec& q1, double h,
          std::optional<Vec> v_guess = std::nullopt);
Vec d2_ld(const ShootingConfig& cfg, const LagrangianSystem& sys, const Vec& q0, const Vec& q1, double h,
          std::optional<Vec> v_guess = std::nullopt);

/// Result of one step of a shooting integrator.
struct ShootingStep {
  PhaseState z;
  Vec next_guess;  // warm start for the following step
  int outer_iterations = 0;
};

/// Discrete Hamiltonian map (q0, p0) -> (q1, p1) of the implicit discrete
/// Euler-Lagrange equations, iterating on v^0 until p0 = -D1 L_d.
ShootingStep step_lagrangian(const ShootingConfig& cfg, const LagrangianSystem& sys, const PhaseState& z,
                             double h, std::optional<Vec> v_guess = std::nullopt);

// Hamiltonian form: phase-space stepper, shooting unknown p^0,
// L_d = h sum b_i [p^i v^i - H(q^i, p^i)] with v^i = dH/dp.
HamiltonianLdEvaluation discrete_lagrangian_hamiltonian(const ShootingConfig& cfg, const LagrangianSystem& sys,
                                                        const Vec& q0, const Vec& q1, double h,
                                                        std::optional<Vec> p_guess = std::nullopt);
ShootingStep step_hamiltonian(const ShootingConfig& cfg, const LagrangianSystem& sys, const PhaseState& z,
                              double h, std::optional<Vec> p_guess = std::nullopt);

// Type II form: H_d+(q0, p1) = p^n q^n - h sum b_i [p^i v^i - H] with
// boundary conditions q^0 = q0, p^n = p1; q1 = D2 H_d+, p0 = D1 H_d+.
HamiltonianLdEvaluation discrete_hamiltonian_plus(const ShootingConfig& cfg, const LagrangianSystem& sys,
                                                  const Vec& q0, const Vec& p1, double h,
                                                  std::optional<Vec> p_guess = std::nullopt);
ShootingStep step_type2(const ShootingConfig& cfg, const LagrangianSystem& sys, const PhaseState& z, double h,
                        std::optional<Vec> p_guess = std::nullopt);

/// |L_d(q0, q1; h) + L_d(q1, q0; -h)|
double self_adjointness_residual(const ShootingConfig& cfg, const LagrangianSystem& sys, const Vec& q0,
                                 const Vec& q1, double h);

/// <-D1 L_d(q0, q1), xi_Q(q0)>
double discrete_momentum(const ShootingConfig& cfg, const LagrangianSystem& sys, const Vec& q0, const Vec& q1,
                         double h, const std::function<Vec(const Vec&)>& generator);

enum class ShootingForm { lagrangian, hamiltonian, type2 };

/// Steps a trajectory, carrying warm starts between steps.
class ShootingIntegrator {
 public:
  ShootingIntegrator(ShootingConfig cfg, LagrangianSystem sys, ShootingForm form = ShootingForm::lagrangian);

  PhaseState step(const PhaseState& z, double h);
  int last_iterations() const { return last_iterations_; }
  const ShootingConfig& config() const { return cfg_; }
  const LagrangianSystem& system() const { return sys_; }

 private:
  ShootingConfig cfg_;
  LagrangianSystem sys_;
  ShootingForm form_;
  std::optional<Vec> guess_;
  int last_iterations_ = 0;
};

}  // namespace vi

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vi/numerics.hpp"
#include "vi/systems.hpp"

namespace vi {

enum class StateSpace { tangent, phase };

/// A one-step map with its metadata.
///
/// Tangent-space steppers integrate (q', v') = (v, accel(q, v)); phase-space
/// steppers integrate Hamilton's equations from dH/dq and dH/dp. Only the
/// stepper matching `space` is set.
struct OneStepMethod {
  using TangentStepper = std::function<TangentState(const LagrangianSystem&, const TangentState&, double)>;
  using PhaseStepper = std::function<PhaseState(const LagrangianSystem&, const PhaseState&, double)>;

  std::string name;
  int order = 0;
  bool self_adjoint = false;
  bool affine_equivariant = false;  // commutes with affine point transformations
  StateSpace space = StateSpace::tangent;
  TangentStepper tangent_step;
  PhaseStepper phase_step;

  TangentState step(const LagrangianSystem& sys, const TangentState& z, double h) const;
  PhaseState step(const LagrangianSystem& sys, const PhaseState& z, double h) const;
};

OneStepMethod explicit_euler(StateSpace space = StateSpace::tangent);
OneStepMethod explicit_midpoint(StateSpace space = StateSpace::tangent);
OneStepMethod rk4(StateSpace space = StateSpace::tangent);
/// Stage equation solved by Newton to round-off; throws NoConvergence.
OneStepMethod implicit_midpoint(StateSpace space = StateSpace::tangent);

/// Two-stage Gauss collocation, order 4; throws NoConvergence.
OneStepMethod gauss2(StateSpace space = StateSpace::tangent);

/// euler, explicit_midpoint, rk4, implicit_midpoint, gauss2.
OneStepMethod make_method(const std::string& name, StateSpace space = StateSpace::tangent);

/// States at nodes c_0 = 0 < ... < c_n = 1 of [0, h], reached by substeps of
/// length (c_{i+1} - c_i) h. Zero-length substeps are the identity.
std::vector<TangentState> propagate_nodes(const OneStepMethod& method, const LagrangianSystem& sys,
                                          const TangentState& z0, double h, std::span<const double> c);
std::vector<PhaseState> propagate_nodes(const OneStepMethod& method, const LagrangianSystem& sys,
                                        const PhaseState& z0, double h, std::span<const double> c);

}  // namespace vi

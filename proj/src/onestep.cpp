#include "vi/onestep.hpp"

#include <algorithm>
#include <cmath>

#include "vi/errors.hpp"

namespace vi {

namespace {

// First-order form y = [q; w], with w the velocity or the momentum.
using Field = std::function<Vec(const Vec&)>;

Vec stack(const Vec& a, const Vec& b) {
  Vec y(a.size() + b.size());
  y << a, b;
  return y;
}

Field tangent_field(const LagrangianSystem& sys) {
  return [&sys](const Vec& y) {
    const Eigen::Index m = y.size() / 2;
    const Vec q = y.head(m);
    const Vec v = y.tail(m);
    return stack(v, sys.accel(q, v));
  };
}

Field phase_field(const LagrangianSystem& sys) {
  if (!sys.has_hamiltonian())
    throw InvalidSpec("system '" + sys.name + "' has no Hamiltonian for a phase-space stepper");
  return [&sys](const Vec& y) {
    const Eigen::Index m = y.size() / 2;
    const Vec q = y.head(m);
    const Vec p = y.tail(m);
    return stack(sys.dH_dp(q, p), Vec(-sys.dH_dq(q, p)));
  };
}

Vec euler_update(const Field& f, const Vec& y, double h) { return y + h * f(y); }

Vec midpoint_update(const Field& f, const Vec& y, double h) {
  const Vec k1 = f(y);
  return y + h * f(y + 0.5 * h * k1);
}

Vec rk4_update(const Field& f, const Vec& y, double h) {
  const Vec k1 = f(y);
  const Vec k2 = f(y + 0.5 * h * k1);
  const Vec k3 = f(y + 0.5 * h * k2);
  const Vec k4 = f(y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Vec implicit_midpoint_update(const Field& f, const Vec& y, double h) {
  NewtonConfig cfg;
  cfg.tol = 1e-14 * std::max(1.0, y.lpNorm<Eigen::Infinity>());
  cfg.polish = 1;
  auto residual = [&](const Vec& y1) { return Vec(y1 - y - h * f(0.5 * (y + y1))); };
  return newton_solve(residual, midpoint_update(f, y, h), cfg).x;
}

// Two-stage Gauss collocation, stages solved jointly by Newton.
Vec gauss2_update(const Field& f, const Vec& y, double h) {
  const double r = std::sqrt(3.0) / 6.0;
  const double a11 = 0.25, a12 = 0.25 - r, a21 = 0.25 + r, a22 = 0.25;
  const Eigen::Index d = y.size();
  NewtonConfig cfg;
  cfg.tol = 1e-14 * std::max(1.0, y.lpNorm<Eigen::Infinity>());
  cfg.polish = 1;
  auto residual = [&](const Vec& k) {
    const Vec k1 = k.head(d);
    const Vec k2 = k.tail(d);
    return stack(Vec(k1 - f(y + h * (a11 * k1 + a12 * k2))), Vec(k2 - f(y + h * (a21 * k1 + a22 * k2))));
  };
  const Vec f0 = f(y);
  const Vec k = newton_solve(residual, stack(f0, f0), cfg).x;
  return y + 0.5 * h * (k.head(d) + k.tail(d));
}

using Update = Vec (*)(const Field&, const Vec&, double);

OneStepMethod make(std::string name, int order, bool self_adjoint, StateSpace space, Update update) {
  OneStepMethod m;
  m.name = std::move(name);
  m.order = order;
  m.self_adjoint = self_adjoint;
  m.affine_equivariant = true;  // all catalog methods are Runge-Kutta methods
  m.space = space;
  if (space == StateSpace::tangent) {
    m.tangent_step = [update](const LagrangianSystem& sys, const TangentState& z, double h) {
      const Vec y = update(tangent_field(sys), stack(z.q, z.v), h);
      const Eigen::Index d = z.q.size();
      return TangentState{y.head(d), y.tail(d)};
    };
  } else {
    m.phase_step = [update](const LagrangianSystem& sys, const PhaseState& z, double h) {
      const Vec y = update(phase_field(sys), stack(z.q, z.p), h);
      const Eigen::Index d = z.q.size();
      return PhaseState{y.head(d), y.tail(d)};
    };
  }
  return m;
}

template <class State>
std::vector<State> propagate(const OneStepMethod& method, const LagrangianSystem& sys, const State& z0,
                             double h, std::span<const double> c) {
  if (c.empty() || c.front() != 0.0 || c.back() != 1.0)
    throw InvalidSpec("propagate_nodes: nodes must start at 0 and end at 1");
  std::vector<State> nodes;
  nodes.reserve(c.size());
  nodes.push_back(z0);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const double dc = c[i + 1] - c[i];
    if (dc < 0.0) throw InvalidSpec("propagate_nodes: nodes must be ascending");
    if (dc == 0.0) {
      nodes.push_back(nodes.back());
    } else {
      nodes.push_back(method.step(sys, nodes.back(), dc * h));
    }
  }
  return nodes;
}

}  // namespace

TangentState OneStepMethod::step(const LagrangianSystem& sys, const TangentState& z, double h) const {
  if (!tangent_step) throw InvalidSpec("method '" + name + "' is not a tangent-space method");
  return tangent_step(sys, z, h);
}

PhaseState OneStepMethod::step(const LagrangianSystem& sys, const PhaseState& z, double h) const {
  if (!phase_step) throw InvalidSpec("method '" + name + "' is not a phase-space method");
  return phase_step(sys, z, h);
}

OneStepMethod explicit_euler(StateSpace space) { return make("euler", 1, false, space, euler_update); }

OneStepMethod explicit_midpoint(StateSpace space) {
  return make("explicit_midpoint", 2, false, space, midpoint_update);
}

OneStepMethod rk4(StateSpace space) { return make("rk4", 4, false, space, rk4_update); }

OneStepMethod implicit_midpoint(StateSpace space) {
  return make("implicit_midpoint", 2, true, space, implicit_midpoint_update);
}

OneStepMethod gauss2(StateSpace space) { return make("gauss2", 4, true, space, gauss2_update); }

OneStepMethod make_method(const std::string& name, StateSpace space) {
  if (name == "euler") return explicit_euler(space);
  if (name == "explicit_midpoint") return explicit_midpoint(space);
  if (name == "rk4") return rk4(space);
  if (name == "implicit_midpoint") return implicit_midpoint(space);
  if (name == "gauss2") return gauss2(space);
  throw InvalidSpec("unknown one-step method '" + name + "'");
}

std::vector<TangentState> propagate_nodes(const OneStepMethod& method, const LagrangianSystem& sys,
                                          const TangentState& z0, double h, std::span<const double> c) {
  return propagate(method, sys, z0, h, c);
}

std::vector<PhaseState> propagate_nodes(const OneStepMethod& method, const LagrangianSystem& sys,
                                        const PhaseState& z0, double h, std::span<const double> c) {
  return propagate(method, sys, z0, h, c);
}

}  // namespace vi

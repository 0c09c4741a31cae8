#include "vi/shooting.hpp"

#include <algorithm>
#include <cmath>

#include "vi/errors.hpp"

namespace vi {

namespace {

double hamiltonian_action(const QuadratureRule& rule, const LagrangianSystem& sys,
                          const std::vector<PhaseState>& nodes, double h) {
  if (rule.derivative_weights)
    throw InvalidSpec("Hamiltonian shooting forms do not support derivative-augmented rules");
  std::vector<double> samples(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& z = nodes[i];
    samples[i] = z.p.dot(sys.dH_dp(z.q, z.p)) - sys.hamiltonian(z.q, z.p);
  }
  return integrate(rule, h, samples);
}

void require_phase(const ShootingConfig& cfg, const LagrangianSystem& sys) {
  if (cfg.method.space != StateSpace::phase)
    throw InvalidSpec("Hamiltonian shooting needs a phase-space method");
  if (!sys.has_hamiltonian()) throw InvalidSpec("system '" + sys.name + "' has no Hamiltonian");
}

Vec default_momentum_guess(const LagrangianSystem& sys, const Vec& q0, const Vec& q1, double h) {
  const Vec v = (q1 - q0) / h;
  if (sys.dL_dv) return sys.dL_dv(q0, v);
  return v;
}

}  // namespace

ShootingConfig make_shooting_config(OneStepMethod method, QuadratureRule rule) {
  ShootingConfig cfg{std::move(method), std::move(rule), {}, {}, NewtonConfig::default_fd_step()};
  cfg.inner.tol = 1e-12;
  cfg.inner.polish = 1;
  cfg.outer.tol = 1e-10;
  cfg.outer.polish = 1;
  return cfg;
}

double shooting_action(const QuadratureRule& rule, const LagrangianSystem& sys,
                       const std::vector<TangentState>& nodes, double h) {
  std::vector<double> samples(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) samples[i] = sys.lagrangian(nodes[i].q, nodes[i].v);
  if (!rule.derivative_weights) return integrate(rule, h, samples);
  // dL/dt = dL/dq . v + dL/dv . accel along the Euler-Lagrange vector field
  auto rate = [&sys](const TangentState& z) {
    return sys.dL_dq(z.q, z.v).dot(z.v) + sys.dL_dv(z.q, z.v).dot(sys.accel(z.q, z.v));
  };
  return integrate(rule, h, samples, std::make_pair(rate(nodes.front()), rate(nodes.back())));
}

LdEvaluation discrete_lagrangian(const ShootingConfig& cfg, const LagrangianSystem& sys, const Vec& q0,
                                 const Vec& q1, double h, std::optional<Vec> v_guess) {
  if (h == 0.0) throw InvalidSpec("discrete_lagrangian: zero step");
  const auto& c = cfg.rule.nodes;
  auto residual = [&](const Vec& v0) {
    return Vec(propagate_nodes(cfg.method, sys, TangentState{q0, v0}, h, c).back().q - q1);
  };
  const Vec guess = v_guess ? *v_guess : Vec((q1 - q0) / h);
  const NewtonResult sol = newton_solve(residual, guess, cfg.inner);
  LdEvaluation out;
  out.nodes = propagate_nodes(cfg.method, sys, TangentState{q0, sol.x}, h, c);
  out.iterations = sol.iterations;
  out.value = shooting_action(cfg.rule, sys, out.nodes, h);
  return out;
}

Vec d1_ld(const ShootingConfig& cfg, const LagrangianSystem& sys, const Vec& q0, const Vec& q1, double h,
          std::optional<Vec> v_guess) {
  const Vec warm = v_guess ? *v_guess : discrete_lagrangian(cfg, sys, q0, q1, h).v0();
  return fd_grad_scaled([&](const Vec& x) { return discrete_lagrangian(cfg, sys, x, q1, h, warm).value; },
                        q0, cfg.fd_step);
}

Vec d2_ld(const ShootingConfig& cfg, const LagrangianSystem& sys, const Vec& q0, const Vec& q1, double h,
          std::optional<Vec> v_guess) {
  const Vec warm = v_guess ? *v_guess : discrete_lagrangian(cfg, sys, q0, q1, h).v0();
  return fd_grad_scaled([&](const Vec& x) { return discrete_lagrangian(cfg, sys, q0, x, h, warm).value; },
                        q1, cfg.fd_step);
}

ShootingStep step_lagrangian(const ShootingConfig& cfg, const LagrangianSystem& sys, const PhaseState& z,
                             double h, std::optional<Vec> v_guess) {
  const auto& c = cfg.rule.nodes;
  const Vec& q0 = z.q;
  auto endpoint = [&](const Vec& v0) {
    return propagate_nodes(cfg.method, sys, TangentState{q0, v0}, h, c).back().q;
  };
  auto residual = [&](const Vec& v0) { return Vec(z.p + d1_ld(cfg, sys, q0, endpoint(v0), h, v0)); };
  const Vec guess = v_guess ? *v_guess : inverse_legendre(sys, z.q, z.p).v;
  const NewtonResult sol = newton_solve(residual, guess, cfg.outer);

  const auto nodes = propagate_nodes(cfg.method, sys, TangentState{q0, sol.x}, h, c);
  const Vec q1 = nodes.back().q;
  ShootingStep out;
  out.z = PhaseState{q1, d2_ld(cfg, sys, q0, q1, h, sol.x)};
  out.next_guess = nodes.back().v;
  out.outer_iterations = sol.iterations;
  return out;
}

HamiltonianLdEvaluation discrete_lagrangian_hamiltonian(const ShootingConfig& cfg, const LagrangianSystem& sys,
                                                        const Vec& q0, const Vec& q1, double h,
                                                        std::optional<Vec> p_guess) {
  require_phase(cfg, sys);
  if (h == 0.0) throw InvalidSpec("discrete_lagrangian_hamiltonian: zero step");
  const auto& c = cfg.rule.nodes;
  auto residual = [&](const Vec& p0) {
    return Vec(propagate_nodes(cfg.method, sys, PhaseState{q0, p0}, h, c).back().q - q1);
  };
  const Vec guess = p_guess ? *p_guess : default_momentum_guess(sys, q0, q1, h);
  const NewtonResult sol = newton_solve(residual, guess, cfg.inner);
  HamiltonianLdEvaluation out;
  out.nodes = propagate_nodes(cfg.method, sys, PhaseState{q0, sol.x}, h, c);
  out.iterations = sol.iterations;
  out.value = hamiltonian_action(cfg.rule, sys, out.nodes, h);
  return out;
}

ShootingStep step_hamiltonian(const ShootingConfig& cfg, const LagrangianSystem& sys, const PhaseState& z,
                              double h, std::optional<Vec> p_guess) {
  require_phase(cfg, sys);
  const auto& c = cfg.rule.nodes;
  const Vec& q0 = z.q;
  auto ld = [&](const Vec& a, const Vec& b, const Vec& warm) {
    return discrete_lagrangian_hamiltonian(cfg, sys, a, b, h, warm).value;
  };
  auto endpoint = [&](const Vec& p0) {
    return propagate_nodes(cfg.method, sys, PhaseState{q0, p0}, h, c).back().q;
  };
  auto residual = [&](const Vec& p0) {
    const Vec q1 = endpoint(p0);
    return Vec(z.p + fd_grad_scaled([&](const Vec& x) { return ld(x, q1, p0); }, q0, cfg.fd_step));
  };
  const Vec guess = p_guess ? *p_guess : z.p;
  const NewtonResult sol = newton_solve(residual, guess, cfg.outer);

  const auto nodes = propagate_nodes(cfg.method, sys, PhaseState{q0, sol.x}, h, c);
  const Vec q1 = nodes.back().q;
  ShootingStep out;
  out.z = PhaseState{q1, fd_grad_scaled([&](const Vec& x) { return ld(q0, x, sol.x); }, q1, cfg.fd_step)};
  out.next_guess = nodes.back().p;
  out.outer_iterations = sol.iterations;
  return out;
}

HamiltonianLdEvaluation discrete_hamiltonian_plus(const ShootingConfig& cfg, const LagrangianSystem& sys,
                                                  const Vec& q0, const Vec& p1, double h,
                                                  std::optional<Vec> p_guess) {
  require_phase(cfg, sys);
  const auto& c = cfg.rule.nodes;
  auto residual = [&](const Vec& p0) {
    return Vec(propagate_nodes(cfg.method, sys, PhaseState{q0, p0}, h, c).back().p - p1);
  };
  const Vec guess = p_guess ? *p_guess : p1;
  const NewtonResult sol = newton_solve(residual, guess, cfg.inner);
  HamiltonianLdEvaluation out;
  out.nodes = propagate_nodes(cfg.method, sys, PhaseState{q0, sol.x}, h, c);
  out.iterations = sol.iterations;
  const auto& last = out.nodes.back();
  out.value = last.p.dot(last.q) - hamiltonian_action(cfg.rule, sys, out.nodes, h);
  return out;
}

ShootingStep step_type2(const ShootingConfig& cfg, const LagrangianSystem& sys, const PhaseState& z, double h,
                        std::optional<Vec> p_guess) {
  require_phase(cfg, sys);
  const auto& c = cfg.rule.nodes;
  const Vec& q0 = z.q;
  auto hd = [&](const Vec& a, const Vec& b, const Vec& warm) {
    return discrete_hamiltonian_plus(cfg, sys, a, b, h, warm).value;
  };
  auto terminal_momentum = [&](const Vec& p0) {
    return propagate_nodes(cfg.method, sys, PhaseState{q0, p0}, h, c).back().p;
  };
  auto residual = [&](const Vec& p0) {
    const Vec p1 = terminal_momentum(p0);
    return Vec(fd_grad_scaled([&](const Vec& x) { return hd(x, p1, p0); }, q0, cfg.fd_step) - z.p);
  };
  const Vec guess = p_guess ? *p_guess : z.p;
  const NewtonResult sol = newton_solve(residual, guess, cfg.outer);

  const Vec p1 = terminal_momentum(sol.x);
  ShootingStep out;
  out.z = PhaseState{fd_grad_scaled([&](const Vec& x) { return hd(q0, x, sol.x); }, p1, cfg.fd_step), p1};
  out.next_guess = p1;
  out.outer_iterations = sol.iterations;
  return out;
}

double self_adjointness_residual(const ShootingConfig& cfg, const LagrangianSystem& sys, const Vec& q0,
                                 const Vec& q1, double h) {
  return std::abs(discrete_lagrangian(cfg, sys, q0, q1, h).value +
                  discrete_lagrangian(cfg, sys, q1, q0, -h).value);
}

double discrete_momentum(const ShootingConfig& cfg, const LagrangianSystem& sys, const Vec& q0, const Vec& q1,
                         double h, const std::function<Vec(const Vec&)>& generator) {
  return -d1_ld(cfg, sys, q0, q1, h).dot(generator(q0));
}

ShootingIntegrator::ShootingIntegrator(ShootingConfig cfg, LagrangianSystem sys, ShootingForm form)
    : cfg_(std::move(cfg)), sys_(std::move(sys)), form_(form) {
  if (form_ != ShootingForm::lagrangian) require_phase(cfg_, sys_);
}

PhaseState ShootingIntegrator::step(const PhaseState& z, double h) {
  ShootingStep s;
  switch (form_) {
    case ShootingForm::lagrangian:
      s = step_lagrangian(cfg_, sys_, z, h, guess_);
      break;
    case ShootingForm::hamiltonian:
      s = step_hamiltonian(cfg_, sys_, z, h, guess_);
      break;
    case ShootingForm::type2:
      s = step_type2(cfg_, sys_, z, h, guess_);
      break;
  }
  guess_ = s.next_guess;
  last_iterations_ = s.outer_iterations;
  return s.z;
}

}  // namespace vi

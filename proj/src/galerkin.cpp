#include "vi/galerkin.hpp"

#include <algorithm>

#include "vi/errors.hpp"

namespace vi {

namespace {

void validate(const GalerkinConfig& cfg) {
  if (cfg.s < 1) throw InvalidSpec("Galerkin degree must be at least 1");
  const auto& d = cfg.control_times;
  if (static_cast<int>(d.size()) != cfg.s + 1 || d.front() != 0.0 || d.back() != 1.0)
    throw InvalidSpec("Galerkin control times must run from 0 to 1 with s + 1 entries");
  for (std::size_t i = 1; i < d.size(); ++i)
    if (!(d[i] > d[i - 1])) throw InvalidSpec("Galerkin control times must be strictly ascending");
  if (cfg.rule.derivative_weights)
    throw InvalidSpec("Galerkin discrete Lagrangians do not support derivative-augmented rules");
}

std::vector<Vec> unstack_internal(const Vec& x, const Vec& q0, const Vec& q1, int s) {
  const Eigen::Index m = q0.size();
  std::vector<Vec> pts;
  pts.reserve(s + 1);
  pts.push_back(q0);
  for (int nu = 1; nu < s; ++nu) pts.push_back(x.segment((nu - 1) * m, m));
  pts.push_back(q1);
  return pts;
}

}  // namespace

GalerkinConfig make_galerkin_config(int s, QuadratureRule rule) {
  GalerkinConfig cfg;
  cfg.s = s;
  cfg.control_times.resize(s + 1);
  for (int nu = 0; nu <= s; ++nu) cfg.control_times[nu] = static_cast<double>(nu) / s;
  cfg.rule = std::move(rule);
  cfg.newton.polish = 1;
  validate(cfg);
  return cfg;
}

TangentState interpolant(const GalerkinConfig& cfg, const std::vector<Vec>& points, double tau, double h) {
  const Eigen::Index m = points.front().size();
  TangentState z{Vec::Zero(m), Vec::Zero(m)};
  for (int nu = 0; nu <= cfg.s; ++nu) {
    z.q += points[nu] * lagrange_basis(cfg.control_times, nu, tau);
    z.v += points[nu] * lagrange_basis_deriv(cfg.control_times, nu, tau);
  }
  z.v /= h;
  return z;
}

double galerkin_action(const GalerkinConfig& cfg, const LagrangianSystem& sys, const std::vector<Vec>& points,
                       double h) {
  const auto& c = cfg.rule.nodes;
  std::vector<double> samples(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const TangentState z = interpolant(cfg, points, c[i], h);
    samples[i] = sys.lagrangian(z.q, z.v);
  }
  return integrate(cfg.rule, h, samples);
}

Vec galerkin_stationarity(const GalerkinConfig& cfg, const LagrangianSystem& sys,
                          const std::vector<Vec>& points, double h) {
  const Eigen::Index m = points.front().size();
  const auto& c = cfg.rule.nodes;
  const auto& b = cfg.rule.weights;
  Vec r = Vec::Zero((cfg.s - 1) * m);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (b[i] == 0.0) continue;
    const TangentState z = interpolant(cfg, points, c[i], h);
    const Vec lq = sys.dL_dq(z.q, z.v);
    const Vec lv = sys.dL_dv(z.q, z.v);
    for (int nu = 1; nu < cfg.s; ++nu) {
      r.segment((nu - 1) * m, m) +=
          h * b[i] *
          (lq * lagrange_basis(cfg.control_times, nu, c[i]) +
           lv * (lagrange_basis_deriv(cfg.control_times, nu, c[i]) / h));
    }
  }
  return r;
}

GalerkinLd galerkin_ld(const GalerkinConfig& cfg, const LagrangianSystem& sys, const Vec& q0, const Vec& q1,
                       double h, const std::vector<Vec>* warm) {
  validate(cfg);
  if (h == 0.0) throw InvalidSpec("galerkin_ld: zero step");
  const Eigen::Index m = q0.size();
  GalerkinLd out;
  if (cfg.s == 1) {
    out.points = {q0, q1};
  } else {
    Vec x((cfg.s - 1) * m);
    for (int nu = 1; nu < cfg.s; ++nu) {
      x.segment((nu - 1) * m, m) =
          warm ? (*warm)[nu - 1]
               : Vec(q0 + cfg.control_times[nu] * (q1 - q0));  // linear interpolation
    }
    auto residual = [&](const Vec& y) {
      return galerkin_stationarity(cfg, sys, unstack_internal(y, q0, q1, cfg.s), h);
    };
    const NewtonResult sol = newton_solve(residual, x, cfg.newton);
    out.points = unstack_internal(sol.x, q0, q1, cfg.s);
    out.iterations = sol.iterations;
  }
  out.value = galerkin_action(cfg, sys, out.points, h);
  return out;
}

GalerkinStep galerkin_step(const GalerkinConfig& cfg, const LagrangianSystem& sys, const PhaseState& z,
                           double h, std::optional<Vec> q1_guess) {
  const Vec& q0 = z.q;
  auto internal_of = [&](const GalerkinLd& ld) {
    return std::vector<Vec>(ld.points.begin() + 1, ld.points.end() - 1);
  };
  auto d1 = [&](const Vec& q1) {
    const GalerkinLd base = galerkin_ld(cfg, sys, q0, q1, h);
    const auto warm = internal_of(base);
    return fd_grad_scaled(
        [&](const Vec& x) { return galerkin_ld(cfg, sys, x, q1, h, cfg.s > 1 ? &warm : nullptr).value; }, q0,
        cfg.fd_step);
  };
  const Vec guess = q1_guess ? *q1_guess : Vec(q0 + h * inverse_legendre(sys, z.q, z.p).v);
  NewtonConfig outer = cfg.newton;
  outer.tol = 1e-10;  // above the finite-difference floor of D1 L_d
  const NewtonResult sol = newton_solve([&](const Vec& q1) { return Vec(z.p + d1(q1)); }, guess, outer);

  const Vec& q1 = sol.x;
  const GalerkinLd base = galerkin_ld(cfg, sys, q0, q1, h);
  const auto warm = internal_of(base);
  GalerkinStep out;
  out.z.q = q1;
  out.z.p = fd_grad_scaled(
      [&](const Vec& x) { return galerkin_ld(cfg, sys, q0, x, h, cfg.s > 1 ? &warm : nullptr).value; }, q1,
      cfg.fd_step);
  out.iterations = sol.iterations;
  return out;
}

PhaseState GalerkinIntegrator::step(const PhaseState& z, double h) {
  std::optional<Vec> guess;
  if (increment_) guess = Vec(z.q + *increment_);
  const GalerkinStep s = galerkin_step(cfg_, sys_, z, h, guess);
  increment_ = Vec(s.z.q - z.q);
  last_iterations_ = s.iterations;
  return s.z;
}

}  // namespace vi

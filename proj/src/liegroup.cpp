#include "vi/liegroup.hpp"

#include <cmath>

#include "vi/errors.hpp"

namespace vi {

namespace {

// sin x / x and (1 - cos x) / x^2 with their derivatives divided by x.
struct RodriguesCoefficients {
  double a;
  double b;
  double da_over_x;
  double db_over_x;
};

RodriguesCoefficients rodrigues_coefficients(double x) {
  RodriguesCoefficients c{};
  const double x2 = x * x;
  if (x < 1e-4) {
    c.a = 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    c.b = 0.5 - x2 / 24.0 + x2 * x2 / 720.0;
  } else {
    c.a = std::sin(x) / x;
    c.b = (1.0 - std::cos(x)) / x2;
  }
  // The closed forms cancel badly for small x, so the series reaches further.
  if (x < 1e-2) {
    c.da_over_x = -1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0;
    c.db_over_x = -1.0 / 12.0 + x2 / 180.0 - x2 * x2 / 6720.0;
  } else {
    c.da_over_x = (x * std::cos(x) - std::sin(x)) / (x2 * x);
    c.db_over_x = (x * std::sin(x) - 2.0 * (1.0 - std::cos(x))) / (x2 * x2);
  }
  return c;
}

Vec3 to3(const Vec& v) { return Vec3(v[0], v[1], v[2]); }
Vec from3(const Vec3& v) { return Vec(v); }

void validate(const DepConfig& cfg) {
  if (cfg.s < 1 || cfg.s > 3) throw InvalidSpec("DEP degree must be between 1 and 3");
  const auto& d = cfg.control_times;
  if (static_cast<int>(d.size()) != cfg.s + 1 || d.front() != 0.0 || d.back() != 1.0)
    throw InvalidSpec("DEP control times must run from 0 to 1 with s + 1 entries");
  for (std::size_t i = 1; i < d.size(); ++i)
    if (!(d[i] > d[i - 1])) throw InvalidSpec("DEP control times must be strictly ascending");
  if (cfg.rule.derivative_weights) throw InvalidSpec("DEP does not support derivative-augmented rules");
  if (!cfg.l || !cfg.dl_deta) throw InvalidSpec("DEP needs a reduced Lagrangian and its gradient");
}

std::vector<Vec3> with_endpoints(const Vec& internal, const Vec3& xi_s, int s) {
  std::vector<Vec3> pts;
  pts.reserve(s + 1);
  pts.push_back(Vec3::Zero());
  for (int nu = 1; nu < s; ++nu) pts.push_back(internal.segment<3>(3 * (nu - 1)));
  pts.push_back(xi_s);
  return pts;
}

Vec stack_internal(const std::vector<Vec3>& pts) {
  const int s = static_cast<int>(pts.size()) - 1;
  Vec x(3 * (s - 1));
  for (int nu = 1; nu < s; ++nu) x.segment<3>(3 * (nu - 1)) = pts[nu];
  return x;
}

Mat3 ddexp_matrix(const Vec3& xi) {
  Mat3 m;
  for (int j = 0; j < 3; ++j) m.col(j) = ddexp_ad(xi, Vec3::Unit(j));
  return m;
}

Vec printed_residual(const DepConfig& cfg, const std::vector<Vec3>& pts, double h) {
  const auto& c = cfg.rule.nodes;
  const auto& b = cfg.rule.weights;
  Vec r = Vec::Zero(3 * (cfg.s - 1));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (b[i] == 0.0) continue;
    Vec3 xi = Vec3::Zero();
    for (int k = 0; k <= cfg.s; ++k) xi += pts[k] * lagrange_basis(cfg.control_times, k, c[i]);
    const Vec3 dl = cfg.dl_deta(dep_body_velocity(cfg, pts, c[i], h));
    const Vec3 row = ddexp_matrix(-xi).transpose() * dl;
    for (int nu = 1; nu < cfg.s; ++nu)
      r.segment<3>(3 * (nu - 1)) += h * b[i] * row * lagrange_basis_deriv(cfg.control_times, nu, c[i]);
  }
  return r;
}

}  // namespace

Mat3 jd_from_j(const Mat3& j) { return 0.5 * j.trace() * Mat3::Identity() - j; }

Mat3 j_from_jd(const Mat3& jd) { return jd.trace() * Mat3::Identity() - jd; }

RigidBody RigidBody::from_inertia(const Mat3& j) {
  if (!j.allFinite() || (j - j.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidSpec("inertia tensor must be finite and symmetric");
  Eigen::SelfAdjointEigenSolver<Mat3> eig(j);
  if (eig.eigenvalues().minCoeff() <= 0.0) throw InvalidSpec("inertia tensor must be positive-definite");
  return RigidBody{j, jd_from_j(j)};
}

double lgvi_ld(const Rotation& f, const Mat3& jd, double h) {
  return ((Mat3::Identity() - f.matrix()) * jd).trace() / h;
}

NewtonConfig rigid_body_newton() {
  NewtonConfig cfg;
  cfg.tol = kRigidBodyTol;
  cfg.max_iter = 50;
  return cfg;
}

SolveFResult solve_F(const Vec3& g, const RigidBody& body, RotationMap map, const NewtonConfig& cfg) {
  const Mat3& J = body.J;
  NewtonResult sol;
  if (map == RotationMap::exp) {
    auto residual = [&](const Vec& x) {
      const Vec3 f = to3(x);
      const auto c = rodrigues_coefficients(f.norm());
      const Vec3 jf = J * f;
      return from3(c.a * jf + c.b * f.cross(jf) - g);
    };
    auto jacobian = [&](const Vec& x) {
      const Vec3 f = to3(x);
      const auto c = rodrigues_coefficients(f.norm());
      const Vec3 jf = J * f;
      const Mat3 jac = c.da_over_x * jf * f.transpose() + c.a * J +
                       c.db_over_x * f.cross(jf) * f.transpose() + c.b * (-hat(jf) + hat(f) * J);
      return Mat(jac);
    };
    sol = newton_solve(residual, from3(J.ldlt().solve(g)), cfg, jacobian);
  } else {
    auto residual = [&](const Vec& x) {
      const Vec3 f = to3(x);
      return from3(g + g.cross(f) + g.dot(f) * f - 2.0 * J * f);
    };
    auto jacobian = [&](const Vec& x) {
      const Vec3 f = to3(x);
      const Mat3 jac = hat(g) + g.dot(f) * Mat3::Identity() + f * g.transpose() - 2.0 * J;
      return Mat(jac);
    };
    sol = newton_solve(residual, from3(0.5 * J.ldlt().solve(g)), cfg, jacobian);
  }
  const Vec3 f = to3(sol.x);
  SolveFResult out{map == RotationMap::exp ? exp_so3(f) : cayley(f), sol.iterations, 0.0};
  const Mat3& F = out.F.matrix();
  out.residual = (F * body.Jd - body.Jd * F.transpose() - hat(g)).norm();
  return out;
}

LgviState lgvi_init(const Vec3& omega0, const RigidBody& body, double h, RotationMap map, const Rotation& r0,
                    const NewtonConfig& cfg, int* iterations) {
  if (!(h > 0.0)) throw InvalidSpec("lgvi_init: step must be positive");
  const SolveFResult s = solve_F(h * body.J * omega0, body, map, cfg);
  if (iterations) *iterations = s.iterations;
  return LgviState{r0, s.F, h};
}

LgviState lgvi_step(const LgviState& state, const RigidBody& body, RotationMap map, const NewtonConfig& cfg,
                    int* iterations) {
  const Mat3& F = state.F.matrix();
  const Vec3 g = vee(body.Jd * F - F.transpose() * body.Jd);
  const SolveFResult s = solve_F(g, body, map, cfg);
  if (iterations) *iterations = s.iterations;
  return LgviState{state.R * state.F, s.F, state.h};
}

Vec3 lgvi_spatial_momentum(const LgviState& state, const RigidBody& body) {
  const Mat3& F = state.F.matrix();
  return state.R.matrix() * vee(F * body.Jd - body.Jd * F.transpose()) / state.h;
}

Vec3 body_velocity(const Rotation& f, double h) { return log_so3(f) / h; }

double rigid_body_energy(const RigidBody& body, const Vec3& omega) { return 0.5 * omega.dot(body.J * omega); }

DepConfig make_rigid_body_dep_config(int s, QuadratureRule rule, const RigidBody& body) {
  DepConfig cfg;
  cfg.s = s;
  cfg.control_times.resize(s + 1);
  for (int nu = 0; nu <= s; ++nu) cfg.control_times[nu] = static_cast<double>(nu) / s;
  cfg.rule = std::move(rule);
  const Mat3 J = body.J;
  cfg.l = [J](const Vec3& eta) { return 0.5 * eta.dot(J * eta); };
  cfg.dl_deta = [J](const Vec3& eta) { return Vec3(J * eta); };
  cfg.newton.tol = 1e-10;
  cfg.newton.polish = 1;
  validate(cfg);
  return cfg;
}

Vec3 dep_body_velocity(const DepConfig& cfg, const std::vector<Vec3>& points, double tau, double h) {
  Vec3 xi = Vec3::Zero();
  Vec3 rate = Vec3::Zero();
  for (int k = 0; k <= cfg.s; ++k) {
    xi += points[k] * lagrange_basis(cfg.control_times, k, tau);
    rate += points[k] * lagrange_basis_deriv(cfg.control_times, k, tau);
  }
  return dexp_ad(-xi, rate / h);
}

double dep_action(const DepConfig& cfg, const std::vector<Vec3>& points, double h) {
  const auto& c = cfg.rule.nodes;
  std::vector<double> samples(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) samples[i] = cfg.l(dep_body_velocity(cfg, points, c[i], h));
  return integrate(cfg.rule, h, samples);
}

Vec dep_internal_gradient(const DepConfig& cfg, const std::vector<Vec3>& points, double h) {
  const Vec3 xi_s = points.back();
  return fd_grad_scaled([&](const Vec& x) { return dep_action(cfg, with_endpoints(x, xi_s, cfg.s), h); },
                        stack_internal(points), cfg.fd_step);
}

DepLd dep_reduced_ld(const DepConfig& cfg, const Rotation& f, double h, const std::vector<Vec3>* warm) {
  validate(cfg);
  if (h == 0.0) throw InvalidSpec("dep_reduced_ld: zero step");
  const Vec3 xi_s = log_so3(f);
  DepLd out;
  std::vector<Vec3> pts;
  if (cfg.s == 1) {
    pts = {Vec3::Zero(), xi_s};
  } else {
    Vec x(3 * (cfg.s - 1));
    for (int nu = 1; nu < cfg.s; ++nu)
      x.segment<3>(3 * (nu - 1)) = warm ? (*warm)[nu - 1] : Vec3(cfg.control_times[nu] * xi_s);
    auto residual = [&](const Vec& y) {
      const auto p = with_endpoints(y, xi_s, cfg.s);
      return cfg.printed_condition ? printed_residual(cfg, p, h) : dep_internal_gradient(cfg, p, h);
    };
    const NewtonResult sol = newton_solve(residual, x, cfg.newton);
    pts = with_endpoints(sol.x, xi_s, cfg.s);
    out.iterations = sol.iterations;
    out.internal.assign(pts.begin() + 1, pts.end() - 1);
  }
  out.value = dep_action(cfg, pts, h);
  return out;
}

Vec3 dep_momentum(const DepConfig& cfg, const Rotation& f, double h) {
  const DepLd base = dep_reduced_ld(cfg, f, h);
  const std::vector<Vec3>* warm = cfg.s > 1 ? &base.internal : nullptr;
  const double e = cfg.fd_step;
  Vec3 m;
  for (int j = 0; j < 3; ++j) {
    const Vec3 d = e * Vec3::Unit(j);
    const double lp = dep_reduced_ld(cfg, exp_so3(d) * f, h, warm).value;
    const double lm = dep_reduced_ld(cfg, exp_so3(-d) * f, h, warm).value;
    m[j] = (lp - lm) / (2.0 * e);
  }
  return m;
}

Rotation dep_step(const DepConfig& cfg, const Rotation& f_prev, double h, int* iterations) {
  const Vec3 target = f_prev.transpose() * dep_momentum(cfg, f_prev, h);
  auto residual = [&](const Vec& x) { return from3(dep_momentum(cfg, exp_so3(to3(x)), h) - target); };
  const NewtonResult sol = newton_solve(residual, from3(log_so3(f_prev)), cfg.newton);
  if (iterations) *iterations = sol.iterations;
  return exp_so3(to3(sol.x));
}

Rotation dep_init(const DepConfig& cfg, const RigidBody& body, const Vec3& omega0, double h) {
  const Vec3 target = body.J * omega0;
  auto residual = [&](const Vec& x) { return from3(dep_momentum(cfg, exp_so3(to3(x)), h) - target); };
  const NewtonResult sol = newton_solve(residual, from3(h * omega0), cfg.newton);
  return exp_so3(to3(sol.x));
}

}  // namespace vi

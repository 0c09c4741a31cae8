#include "vi/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <locale>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "vi/diagnostics.hpp"
#include "vi/errors.hpp"
#include "vi/galerkin.hpp"
#include "vi/reference.hpp"
#include "vi/shooting.hpp"

namespace vi {

namespace {

using json = nlohmann::ordered_json;

bool is_rigid(const ExperimentSpec& spec) { return spec.system == kRigidBodySystem; }

int step_count(double T, double h) { return static_cast<int>(std::floor(T / h + 1e-9)); }

RigidBody body_of(const ExperimentSpec& spec) { return RigidBody::from_inertia(spec.inertia.asDiagonal()); }

PhaseState initial_state(const ExperimentSpec& spec, const LagrangianSystem& sys) {
  const int m = sys.dim;
  Vec q = Vec::Zero(m), p = Vec::Zero(m);
  if (sys.name == "pendulum" || sys.name == "sho") {
    q[0] = 1.0;
  } else if (sys.name == "pair") {
    q << 1.0, 0.0;
    p << 0.3, 0.1;
  } else {
    p.setOnes();
  }
  auto take = [m](const std::vector<double>& v, Vec& dst, const char* what) {
    if (v.empty()) return;
    if (static_cast<int>(v.size()) != m)
      throw InvalidSpec(std::string(what) + " has " + std::to_string(v.size()) + " entries, system needs " +
                        std::to_string(m));
    for (int i = 0; i < m; ++i) dst[i] = v[i];
  };
  take(spec.q0, q, "q0");
  take(spec.p0, p, "p0");
  return PhaseState{q, p};
}

std::vector<double> sweep_of(const ExperimentSpec& spec) {
  if (!spec.h_list.empty()) return spec.h_list;
  return {0.2, 0.1, 0.05, 0.025};
}

TrajectoryRow rigid_row(const RigidBodyIntegrator& integ, const RigidBody& body, int k, double h, double e0) {
  TrajectoryRow row;
  row.step = k;
  row.t = k * h;
  const Mat3 R = integ.attitude();
  row.q.resize(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) row.q[3 * i + j] = R(i, j);
  row.p = body.J * integ.omega();
  row.energy = integ.energy();
  row.energy_error = row.energy - e0;
  row.ortho_error = orthogonality_error(R);
  row.momentum = integ.spatial_momentum();
  row.newton_iters = integ.iterations();
  return row;
}

Trajectory integrate_rigid(const ExperimentSpec& spec) {
  const RigidBody body = body_of(spec);
  RigidBodyIntegrator integ(spec.method, body, spec.omega0, spec.h, spec.tol);
  const int n = step_count(spec.T, spec.h);
  Trajectory traj;
  traj.rigid_body = true;
  const double e0 = integ.energy();
  traj.rows.push_back(rigid_row(integ, body, 0, spec.h, e0));
  for (int k = 1; k <= n; ++k) {
    integ.step();
    traj.rows.push_back(rigid_row(integ, body, k, spec.h, e0));
  }
  return traj;
}

Trajectory integrate_phase(const ExperimentSpec& spec) {
  const LagrangianSystem sys = builtin_system(spec.system);
  PhaseStepper stepper = make_phase_stepper(spec.method, sys, spec.tol);
  PhaseState z = initial_state(spec, sys);
  const double e0 = phase_energy(sys, z);
  const int n = step_count(spec.T, spec.h);
  Trajectory traj;
  auto row = [&](int k, int iters) {
    TrajectoryRow r;
    r.step = k;
    r.t = k * spec.h;
    r.q = z.q;
    r.p = z.p;
    r.energy = phase_energy(sys, z);
    r.energy_error = r.energy - e0;
    r.newton_iters = iters;
    return r;
  };
  traj.rows.push_back(row(0, 0));
  for (int k = 1; k <= n; ++k) {
    z = stepper.step(z, spec.h);
    traj.rows.push_back(row(k, stepper.iterations()));
  }
  return traj;
}

double rigid_global_error(const ExperimentSpec& spec, double h) {
  const RigidBody body = body_of(spec);
  const int n = static_cast<int>(std::lround(spec.T / h));
  RigidBodyIntegrator integ(spec.method, body, spec.omega0, h, spec.tol);
  const bool variational = spec.method == "lgvi-exp" || spec.method == "lgvi-cayley" || spec.method == "dep-s1";
  if (variational) {
    // log F_k / h approximates the body velocity at the middle of the step.
    std::vector<double> times;
    std::vector<Vec3> omegas;
    for (int k = 0; k < n; ++k) {
      times.push_back((k + 0.5) * h);
      omegas.push_back(integ.omega());
      integ.step();
    }
    const auto ref = reference_body_velocity(body, spec.omega0, times);
    double err = 0.0;
    for (int k = 0; k < n; ++k) err = std::max(err, (omegas[k] - ref[k]).norm());
    return err;
  }
  for (int k = 0; k < n; ++k) integ.step();
  const RigidBodyState ref = reference_rigidbody(body, RigidBodyState{Mat3::Identity(), spec.omega0}, spec.T);
  return (integ.omega() - ref.omega).norm() + (integ.attitude() - ref.R).norm();
}

json row_json(const TrajectoryRow& r, bool rigid) {
  json j;
  j["step"] = r.step;
  j["t"] = r.t;
  j["q"] = std::vector<double>(r.q.data(), r.q.data() + r.q.size());
  j["p"] = std::vector<double>(r.p.data(), r.p.data() + r.p.size());
  j["energy"] = r.energy;
  j["energy_error"] = r.energy_error;
  if (rigid) {
    j["ortho_error"] = r.ortho_error;
    j["momentum"] = {r.momentum.x(), r.momentum.y(), r.momentum.z()};
    j["newton_iters"] = r.newton_iters;
  }
  return j;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const Eigen::Index m = traj.rows.empty() ? 0 : traj.rows.front().q.size();
  const Eigen::Index mp = traj.rows.empty() ? 0 : traj.rows.front().p.size();
  os << "step,t";
  for (Eigen::Index i = 0; i < m; ++i) os << ",q" << i;
  for (Eigen::Index i = 0; i < mp; ++i) os << ",p" << i;
  os << ",energy,energy_error";
  if (traj.rigid_body) os << ",ortho_error,momentum_x,momentum_y,momentum_z,newton_iters";
  os << "\n";
  for (const auto& r : traj.rows) {
    os << r.step << "," << format_real(r.t);
    for (Eigen::Index i = 0; i < m; ++i) os << "," << format_real(r.q[i]);
    for (Eigen::Index i = 0; i < mp; ++i) os << "," << format_real(r.p[i]);
    os << "," << format_real(r.energy) << "," << format_real(r.energy_error);
    if (traj.rigid_body) {
      os << "," << format_real(r.ortho_error);
      for (int i = 0; i < 3; ++i) os << "," << format_real(r.momentum[i]);
      os << "," << r.newton_iters;
    }
    os << "\n";
  }
}

void require_format(const std::string& format) {
  if (format != "csv" && format != "json") throw InvalidSpec("unknown output format '" + format + "'");
}

}  // namespace

const std::vector<MethodInfo>& method_registry() {
  static const std::vector<MethodInfo> registry = {
      {"svi-mid-trap", "shooting, implicit midpoint + trapezoid", false, true},
      {"svi-rk4-simpson", "shooting, rk4 + Simpson", false, true},
      {"svi-rk4-em", "shooting, rk4 + Euler-Maclaurin (trapezoid + h^2/12 slope correction)", false, true},
      {"svi-ham-mid", "shooting, Hamiltonian form, phase-space implicit midpoint + trapezoid", false, true},
      {"svi-type2", "shooting, Type II discrete Hamiltonian, implicit midpoint + trapezoid", false, true},
      {"galerkin-s1-trap", "Galerkin, linear interpolant + trapezoid", false, true},
      {"galerkin-s2-simpson", "Galerkin, quadratic interpolant + Simpson", false, true},
      {"lgvi-exp", "Lie group velocity Verlet, exponential-map Newton solve", true, false},
      {"lgvi-cayley", "Lie group velocity Verlet, Cayley-map Newton solve", true, false},
      {"dep-s1", "discrete Euler-Poincare, s = 1 + trapezoid", true, false},
      {"baseline-rk-explicit-midpoint", "explicit midpoint rule", true, true},
      {"baseline-srk-implicit-midpoint", "implicit midpoint rule", true, true},
      {"baseline-lgm-crouch-grossman",
       "Crouch-Grossman, 2 stages at c = (0, 1) with weights (1/2, 1/2), order 2", true, false},
      {"baseline-srk4-gauss2", "2-stage Gauss collocation, order 4", false, true},
  };
  return registry;
}

const MethodInfo& find_method(const std::string& name) {
  for (const auto& m : method_registry())
    if (m.name == name) return m;
  throw InvalidSpec("unknown method '" + name + "'");
}

void validate(const ExperimentSpec& spec) {
  const MethodInfo& m = find_method(spec.method);
  if (is_rigid(spec)) {
    if (!m.rigid_body) throw InvalidSpec("method '" + spec.method + "' does not run on the rigid body");
    body_of(spec);
  } else {
    if (!m.phase) throw InvalidSpec("method '" + spec.method + "' only runs on the rigid body");
    initial_state(spec, builtin_system(spec.system));
  }
  if (!(spec.h > 0.0)) throw InvalidSpec("h must be positive");
  if (!(spec.T >= spec.h)) throw InvalidSpec("T must be at least h");
  for (double h : spec.h_list)
    if (!(h > 0.0)) throw InvalidSpec("every entry of h-list must be positive");
  if (spec.tol && !(*spec.tol > 0.0)) throw InvalidSpec("tol must be positive");
  require_format(spec.format);
}

PhaseStepper make_phase_stepper(const std::string& method, const LagrangianSystem& sys,
                                std::optional<double> tol) {
  auto shooting = [&](OneStepMethod one_step, const char* rule, ShootingForm form) {
    ShootingConfig cfg = make_shooting_config(std::move(one_step), make_rule(rule));
    if (tol) cfg.inner.tol = *tol;
    auto integ = std::make_shared<ShootingIntegrator>(cfg, sys, form);
    return PhaseStepper{[integ](const PhaseState& z, double h) { return integ->step(z, h); },
                        [integ] { return integ->last_iterations(); }};
  };
  auto galerkin = [&](int s, const char* rule) {
    GalerkinConfig cfg = make_galerkin_config(s, make_rule(rule));
    if (tol) cfg.newton.tol = *tol;
    auto integ = std::make_shared<GalerkinIntegrator>(cfg, sys);
    return PhaseStepper{[integ](const PhaseState& z, double h) { return integ->step(z, h); },
                        [integ] { return integ->last_iterations(); }};
  };
  auto plain = [&](OneStepMethod one_step) {
    auto shared = std::make_shared<LagrangianSystem>(sys);
    return PhaseStepper{[one_step, shared](const PhaseState& z, double h) { return one_step.step(*shared, z, h); },
                        [] { return 0; }};
  };
  if (method == "svi-mid-trap") return shooting(implicit_midpoint(), "trapezoid", ShootingForm::lagrangian);
  if (method == "svi-rk4-simpson") return shooting(rk4(), "simpson", ShootingForm::lagrangian);
  if (method == "svi-rk4-em") return shooting(rk4(), "euler_maclaurin2", ShootingForm::lagrangian);
  if (method == "svi-ham-mid")
    return shooting(implicit_midpoint(StateSpace::phase), "trapezoid", ShootingForm::hamiltonian);
  if (method == "svi-type2") return shooting(implicit_midpoint(StateSpace::phase), "trapezoid", ShootingForm::type2);
  if (method == "galerkin-s1-trap") return galerkin(1, "trapezoid");
  if (method == "galerkin-s2-simpson") return galerkin(2, "simpson");
  if (method == "baseline-rk-explicit-midpoint") return plain(explicit_midpoint(StateSpace::phase));
  if (method == "baseline-srk-implicit-midpoint") return plain(implicit_midpoint(StateSpace::phase));
  if (method == "baseline-srk4-gauss2") return plain(gauss2(StateSpace::phase));
  if (find_method(method).rigid_body) throw InvalidSpec("method '" + method + "' only runs on the rigid body");
  throw InvalidSpec("unknown method '" + method + "'");
}

RigidBodyIntegrator::RigidBodyIntegrator(const std::string& method, const RigidBody& body, const Vec3& omega0,
                                         double h, std::optional<double> tol)
    : body_(body), h_(h), newton_(rigid_body_newton()) {
  if (tol) newton_.tol = *tol;
  if (method == "lgvi-exp" || method == "lgvi-cayley") {
    kind_ = Kind::lgvi;
    map_ = method == "lgvi-exp" ? RotationMap::exp : RotationMap::cayley;
    lgvi_ = lgvi_init(omega0, body_, h_, map_, Rotation::identity(), newton_, &iterations_);
  } else if (method == "dep-s1") {
    kind_ = Kind::dep;
    dep_ = make_rigid_body_dep_config(1, make_rule("trapezoid"), body_);
    if (tol) dep_.newton.tol = *tol;
    dep_f_ = dep_init(dep_, body_, omega0, h_);
  } else {
    if (method == "baseline-rk-explicit-midpoint") {
      kind_ = Kind::explicit_midpoint;
    } else if (method == "baseline-srk-implicit-midpoint") {
      kind_ = Kind::implicit_midpoint;
      newton_.tol = tol ? *tol : 1e-13;
    } else if (method == "baseline-lgm-crouch-grossman") {
      kind_ = Kind::crouch_grossman;
    } else {
      throw InvalidSpec("method '" + method + "' does not run on the rigid body");
    }
    state_ = RigidBodyState{Mat3::Identity(), omega0};
  }
}

void RigidBodyIntegrator::step() {
  switch (kind_) {
    case Kind::lgvi:
      lgvi_ = lgvi_step(lgvi_, body_, map_, newton_, &iterations_);
      break;
    case Kind::dep:
      dep_R_ = dep_R_ * dep_f_.matrix();
      dep_f_ = dep_step(dep_, dep_f_, h_, &iterations_);
      break;
    case Kind::explicit_midpoint:
      state_ = baseline_explicit_midpoint(body_, state_, h_);
      break;
    case Kind::implicit_midpoint:
      state_ = baseline_implicit_midpoint(body_, state_, h_, newton_, &iterations_);
      break;
    case Kind::crouch_grossman:
      state_ = baseline_crouch_grossman(body_, state_, h_);
      break;
  }
}

Mat3 RigidBodyIntegrator::attitude() const {
  switch (kind_) {
    case Kind::lgvi:
      return lgvi_.R.matrix();
    case Kind::dep:
      return dep_R_;
    default:
      return state_.R;
  }
}

Vec3 RigidBodyIntegrator::omega() const {
  switch (kind_) {
    case Kind::lgvi:
      return body_velocity(lgvi_.F, h_);
    case Kind::dep:
      return body_velocity(dep_f_, h_);
    default:
      return state_.omega;
  }
}

Vec3 RigidBodyIntegrator::spatial_momentum() const {
  switch (kind_) {
    case Kind::lgvi:
      return lgvi_spatial_momentum(lgvi_, body_);
    case Kind::dep:
      return dep_R_ * dep_momentum(dep_, dep_f_, h_);
    default:
      return state_.R * (body_.J * state_.omega);
  }
}

double RigidBodyIntegrator::energy() const { return rigid_body_energy(body_, omega()); }

Trajectory run_integrate(const ExperimentSpec& spec) {
  validate(spec);
  return is_rigid(spec) ? integrate_rigid(spec) : integrate_phase(spec);
}

EnergyReport run_energy(const ExperimentSpec& spec) {
  EnergyReport report;
  report.trajectory = run_integrate(spec);
  std::vector<double> t, e;
  for (const auto& r : report.trajectory.rows) {
    t.push_back(r.t);
    e.push_back(r.energy_error);
    report.max_energy_error = std::max(report.max_energy_error, std::abs(r.energy_error));
  }
  report.drift_slope = energy_drift_slope(t, e);
  return report;
}

ConvergenceReport run_convergence(const ExperimentSpec& spec) {
  validate(spec);
  const std::vector<double> hs = sweep_of(spec);
  if (hs.size() < 3) throw InvalidSpec("a convergence study needs at least three step sizes");
  for (double h : hs) {
    const double n = std::round(spec.T / h);
    if (n < 1.0 || std::abs(n * h - spec.T) > 1e-9 * std::max(1.0, spec.T))
      throw InvalidSpec("T = " + format_real(spec.T) + " is not a multiple of h = " + format_real(h));
  }
  ConvergenceReport report;
  if (is_rigid(spec)) {
    for (double h : hs) report.points.emplace_back(h, rigid_global_error(spec, h));
    report.reference = "rk4 on the rigid body with steps of at most 1e-4";
  } else {
    const LagrangianSystem sys = builtin_system(spec.system);
    const PhaseState z0 = initial_state(spec, sys);
    const ReferenceSolution ref = reference_solution(sys, z0, spec.T);
    for (double h : hs) {
      PhaseStepper stepper = make_phase_stepper(spec.method, sys, spec.tol);
      PhaseState z = z0;
      const long n = std::lround(spec.T / h);
      for (long k = 0; k < n; ++k) z = stepper.step(z, h);
      const double err = std::sqrt((z.q - ref.z.q).squaredNorm() + (z.p - ref.z.p).squaredNorm());
      report.points.emplace_back(h, err);
    }
    report.reference = "rk4 with step T/2^20, Richardson change " + format_real(ref.richardson_change);
  }
  const LineFit fit = fit_order(report.points);
  report.slope = fit.slope;
  report.intercept = fit.intercept;
  return report;
}

RigidBodyReport run_rigidbody(const ExperimentSpec& spec) {
  ExperimentSpec base = spec;
  base.system = kRigidBodySystem;
  RigidBodyReport report;
  const RigidBody body = body_of(base);
  const int n = step_count(base.T, base.h);
  for (const char* name : {"lgvi-exp", "lgvi-cayley", "dep-s1", "baseline-rk-explicit-midpoint",
                           "baseline-srk-implicit-midpoint", "baseline-lgm-crouch-grossman"}) {
    base.method = name;
    validate(base);
    RigidBodySummary s;
    s.method = name;
    const auto start = std::chrono::steady_clock::now();
    RigidBodyIntegrator integ(name, body, base.omega0, base.h, base.tol);
    const double e0 = integ.energy();
    const Vec3 pi0 = integ.spatial_momentum();
    double e_min = e0, e_max = e0, ortho_sum = 0.0;
    long iter_sum = integ.iterations();
    s.max_iterations = integ.iterations();
    for (int k = 1; k <= n; ++k) {
      integ.step();
      const double e = integ.energy();
      e_min = std::min(e_min, e);
      e_max = std::max(e_max, e);
      s.max_energy_error = std::max(s.max_energy_error, std::abs(e - e0));
      const double ortho = orthogonality_error(integ.attitude());
      s.max_ortho_error = std::max(s.max_ortho_error, ortho);
      ortho_sum += ortho;
      s.momentum_error = std::max(s.momentum_error, (integ.spatial_momentum() - pi0).norm());
      iter_sum += integ.iterations();
      s.max_iterations = std::max(s.max_iterations, integ.iterations());
    }
    s.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    s.energy_band = e_max - e_min;
    s.mean_ortho_error = n > 0 ? ortho_sum / n : 0.0;
    s.mean_iterations = static_cast<double>(iter_sum) / (n + 1);
    report.methods.push_back(s);
  }
  return report;
}

std::string format_real(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << x;
  return os.str();
}

void write_trajectory(std::ostream& os, const Trajectory& traj, const std::string& format) {
  require_format(format);
  if (format == "csv") {
    write_trajectory_csv(os, traj);
    return;
  }
  json rows = json::array();
  for (const auto& r : traj.rows) rows.push_back(row_json(r, traj.rigid_body));
  os << json{{"rows", rows}}.dump(2) << "\n";
}

void write_energy(std::ostream& os, const EnergyReport& report, const std::string& format) {
  require_format(format);
  if (format == "csv") {
    write_trajectory_csv(os, report.trajectory);
    return;
  }
  json rows = json::array();
  for (const auto& r : report.trajectory.rows) rows.push_back(row_json(r, report.trajectory.rigid_body));
  json j;
  j["max_energy_error"] = report.max_energy_error;
  j["drift_slope"] = report.drift_slope;
  j["rows"] = rows;
  os << j.dump(2) << "\n";
}

void write_convergence(std::ostream& os, const ConvergenceReport& report, const std::string& format) {
  require_format(format);
  if (format == "csv") {
    os << "h,global_error\n";
    for (const auto& [h, e] : report.points) os << format_real(h) << "," << format_real(e) << "\n";
    os << "# slope=" << format_real(report.slope) << "\n";
    return;
  }
  json pts = json::array();
  for (const auto& [h, e] : report.points) pts.push_back({{"h", h}, {"global_error", e}});
  json j;
  j["points"] = pts;
  j["slope"] = report.slope;
  j["intercept"] = report.intercept;
  j["reference"] = report.reference;
  os << j.dump(2) << "\n";
}

void write_rigidbody(std::ostream& os, const RigidBodyReport& report, const std::string& format, bool timing) {
  require_format(format);
  if (format == "csv") {
    os << "method,energy_band,max_energy_error,max_ortho_error,mean_ortho_error,momentum_error,"
          "mean_newton_iters,max_newton_iters";
    if (timing) os << ",wall_time_s";
    os << "\n";
    for (const auto& s : report.methods) {
      os << s.method << "," << format_real(s.energy_band) << "," << format_real(s.max_energy_error) << ","
         << format_real(s.max_ortho_error) << "," << format_real(s.mean_ortho_error) << ","
         << format_real(s.momentum_error) << "," << format_real(s.mean_iterations) << "," << s.max_iterations;
      if (timing) os << "," << format_real(s.wall_time);
      os << "\n";
    }
    return;
  }
  json methods = json::array();
  for (const auto& s : report.methods) {
    json j;
    j["method"] = s.method;
    j["energy_band"] = s.energy_band;
    j["max_energy_error"] = s.max_energy_error;
    j["max_ortho_error"] = s.max_ortho_error;
    j["mean_ortho_error"] = s.mean_ortho_error;
    j["momentum_error"] = s.momentum_error;
    j["mean_newton_iters"] = s.mean_iterations;
    j["max_newton_iters"] = s.max_iterations;
    if (timing) j["wall_time_s"] = s.wall_time;
    methods.push_back(j);
  }
  os << json{{"methods", methods}}.dump(2) << "\n";
}

}  // namespace vi

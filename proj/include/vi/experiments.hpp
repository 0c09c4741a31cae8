#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vi/baselines.hpp"
#include "vi/liegroup.hpp"
#include "vi/systems.hpp"

namespace vi {

/// System name used for the free rigid body.
inline constexpr const char* kRigidBodySystem = "rigidbody";

struct ExperimentSpec {
  std::string system = "pendulum";
  std::string method = "svi-mid-trap";
  double h = 0.1;
  std::vector<double> h_list;
  double T = 10.0;
  std::vector<double> q0;  // empty: system default
  std::vector<double> p0;
  std::optional<double> tol;
  std::string out;  // empty: standard output
  std::string format = "csv";
  std::uint64_t seed = 0;
  Vec3 omega0 = Vec3(1.0, 1.2, 0.9);
  Vec3 inertia = Vec3(2.0, 2.5, 3.0);  // principal moments
  bool timing = false;                 // include wall-clock columns in rigidbody output
};

struct MethodInfo {
  std::string name;
  std::string description;
  bool rigid_body;  // runs on the free rigid body
  bool phase;       // runs on LagrangianSystem models
};

const std::vector<MethodInfo>& method_registry();
const MethodInfo& find_method(const std::string& name);

/// Throws InvalidSpec when the experiment settings are inconsistent.
void validate(const ExperimentSpec& spec);

/// Stepper on phase space for the non-rigid-body methods.
struct PhaseStepper {
  std::function<PhaseState(const PhaseState&, double)> step;
  std::function<int()> iterations;
};
PhaseStepper make_phase_stepper(const std::string& method, const LagrangianSystem& sys,
                                std::optional<double> tol = std::nullopt);

/// One of the rigid-body methods, carrying whatever state it needs.
class RigidBodyIntegrator {
 public:
  RigidBodyIntegrator(const std::string& method, const RigidBody& body, const Vec3& omega0, double h,
                      std::optional<double> tol = std::nullopt);

  void step();

  Mat3 attitude() const;
  Vec3 omega() const;             // body angular velocity diagnostic
  Vec3 spatial_momentum() const;  // discrete momentum for the variational methods
  double energy() const;
  int iterations() const { return iterations_; }

 private:
  enum class Kind { lgvi, dep, explicit_midpoint, implicit_midpoint, crouch_grossman };
  Kind kind_;
  RotationMap map_ = RotationMap::exp;
  RigidBody body_;
  double h_;
  NewtonConfig newton_;
  LgviState lgvi_;
  DepConfig dep_;
  Mat3 dep_R_ = Mat3::Identity();
  Rotation dep_f_;
  RigidBodyState state_;
  int iterations_ = 0;
};

struct TrajectoryRow {
  int step = 0;
  double t = 0.0;
  Vec q;
  Vec p;
  double energy = 0.0;
  double energy_error = 0.0;
  // rigid body only
  double ortho_error = 0.0;
  Vec3 momentum = Vec3::Zero();
  int newton_iters = 0;
};

struct Trajectory {
  bool rigid_body = false;
  std::vector<TrajectoryRow> rows;
};

Trajectory run_integrate(const ExperimentSpec& spec);

struct EnergyReport {
  Trajectory trajectory;
  double max_energy_error = 0.0;
  double drift_slope = 0.0;
};
EnergyReport run_energy(const ExperimentSpec& spec);

struct ConvergenceReport {
  std::vector<std::pair<double, double>> points;  // (h, global error)
  double slope = 0.0;
  double intercept = 0.0;
  std::string reference;
};
ConvergenceReport run_convergence(const ExperimentSpec& spec);

struct RigidBodySummary {
  std::string method;
  double energy_band = 0.0;  // max E - min E over the run
  double max_energy_error = 0.0;
  double max_ortho_error = 0.0;
  double mean_ortho_error = 0.0;
  double momentum_error = 0.0;  // max |pi_k - pi_0|
  double wall_time = 0.0;       // seconds
  double mean_iterations = 0.0;
  int max_iterations = 0;
};
struct RigidBodyReport {
  std::vector<RigidBodySummary> methods;
};
/// lgvi-exp, lgvi-cayley, dep-s1 and the three rigid-body baselines.
RigidBodyReport run_rigidbody(const ExperimentSpec& spec);

/// 17 significant digits, locale-independent.
std::string format_real(double x);

void write_trajectory(std::ostream& os, const Trajectory& traj, const std::string& format);
void write_energy(std::ostream& os, const EnergyReport& report, const std::string& format);
void write_convergence(std::ostream& os, const ConvergenceReport& report, const std::string& format);
void write_rigidbody(std::ostream& os, const RigidBodyReport& report, const std::string& format, bool timing);

}  // namespace vi

#pragma once

#include <optional>
#include <vector>

#include "vi/numerics.hpp"
#include "vi/systems.hpp"

namespace vi {

/// Galerkin discrete Lagrangian over degree-s Lagrange polynomials through
/// control points at times d_nu h, with the action approximated by `rule`.
struct GalerkinConfig {
  int s = 1;
  std::vector<double> control_times;  // 0 = d_0 < ... < d_s = 1
  QuadratureRule rule;
  NewtonConfig newton;
  double fd_step = NewtonConfig::default_fd_step();
};

/// Uniform control times nu / s.
GalerkinConfig make_galerkin_config(int s, QuadratureRule rule);

/// Position and velocity of the interpolant at time tau h.
TangentState interpolant(const GalerkinConfig& cfg, const std::vector<Vec>& points, double tau, double h);

/// Gradient of the quadrature action with respect to each internal control
/// point, stacked into one vector of size (s - 1) m.
Vec galerkin_stationarity(const GalerkinConfig& cfg, const LagrangianSystem& sys,
                          const std::vector<Vec>& points, double h);

/// Quadrature action h sum b_i L(q(c_i h), q'(c_i h)) of the interpolant.
double galerkin_action(const GalerkinConfig& cfg, const LagrangianSystem& sys, const std::vector<Vec>& points,
                       double h);

struct GalerkinLd {
  double value = 0.0;
  std::vector<Vec> points;  // all s + 1 control points, endpoints included
  int iterations = 0;
};

/// Extremizes the quadrature action over the internal control points.
/// `warm` may hold s - 1 internal points to start Newton from.
GalerkinLd galerkin_ld(const GalerkinConfig& cfg, const LagrangianSystem& sys, const Vec& q0, const Vec& q1,
                       double h, const std::vector<Vec>* warm = nullptr);

struct GalerkinStep {
  PhaseState z;
  int iterations = 0;
};

/// Solves p0 = -D1 L_d(q0, q1) for q1 and returns (q1, D2 L_d(q0, q1)).
GalerkinStep galerkin_step(const GalerkinConfig& cfg, const LagrangianSystem& sys, const PhaseState& z,
                           double h, std::optional<Vec> q1_guess = std::nullopt);

/// Steps a trajectory, warm-starting each step from the previous increment.
class GalerkinIntegrator {
 public:
  GalerkinIntegrator(GalerkinConfig cfg, LagrangianSystem sys) : cfg_(std::move(cfg)), sys_(std::move(sys)) {}

  PhaseState step(const PhaseState& z, double h);
  int last_iterations() const { return last_iterations_; }

 private:
  GalerkinConfig cfg_;
  LagrangianSystem sys_;
  std::optional<Vec> increment_;
  int last_iterations_ = 0;
};

}  // namespace vi

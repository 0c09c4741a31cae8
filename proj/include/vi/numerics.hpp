#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vi {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Weights multiplying h^2 f'(0) and h^2 f'(h) in derivative-augmented rules.
struct DerivativeWeights {
  double start = 0.0;
  double end = 0.0;
};

/// Quadrature rule on [0, 1] with endpoints included as nodes (c_0 = 0,
/// c_n = 1). Endpoint weights may be zero.
struct QuadratureRule {
  std::string name;
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
  bool symmetric = false;
  std::optional<DerivativeWeights> derivative_weights;

  std::size_t size() const { return nodes.size(); }
};

/// trapezoid, simpson, lobatto4, gauss2_padded, gauss3_padded, euler_maclaurin2.
/// Throws UnknownRule otherwise.
QuadratureRule make_rule(const std::string& name);
std::vector<std::string> rule_names();

/// c_i + c_{n-i} = 1, b_i = b_{n-i} (and antisymmetric derivative weights).
bool has_symmetric_layout(const QuadratureRule& rule, double tol = 1e-15);

/// h * sum b_i f_i (+ h^2 (w_start f'(0) + w_end f'(h)) for derivative rules).
/// Throws MissingDerivatives when a derivative rule gets no endpoint slopes.
double integrate(const QuadratureRule& rule, double h, std::span<const double> samples,
                 std::optional<std::pair<double, double>> endpoint_derivatives = std::nullopt);

// Lagrange cardinal polynomials on control times d_0 < ... < d_s.
double lagrange_basis(std::span<const double> d, int nu, double tau);
double lagrange_basis_deriv(std::span<const double> d, int nu, double tau);

struct NewtonConfig {
  static double default_fd_step() { return std::cbrt(std::numeric_limits<double>::epsilon()); }

  double tol = 1e-12;
  int max_iter = 50;
  double fd_step = default_fd_step();  // scaled by max(1, |x|_inf)
  // Extra Newton updates taken after the residual drops below tol. Pushes
  // the solution toward round-off when outer finite differences consume it.
  int polish = 0;
};

struct NewtonResult {
  Vec x;
  int iterations = 0;
  double residual_norm = 0.0;
  std::vector<double> residual_history;
};

using VectorFunction = std::function<Vec(const Vec&)>;
using JacobianFunction = std::function<Mat(const Vec&)>;

/// Newton's method with an analytic or central-difference Jacobian.
/// Throws NoConvergence or SingularJacobian.
NewtonResult newton_solve(const VectorFunction& residual, const Vec& x0, const NewtonConfig& cfg = {},
                          const JacobianFunction& jacobian = nullptr);

/// Central-difference gradient with a fixed step.
Vec fd_grad(const std::function<double(const Vec&)>& f, const Vec& x, double step);

/// Central-difference gradient with per-component steps base * max(1, |x_j|).
Vec fd_grad_scaled(const std::function<double(const Vec&)>& f, const Vec& x, double base);

/// Central-difference Jacobian with a fixed step.
Mat fd_jacobian(const VectorFunction& f, const Vec& x, double step);

}  // namespace vi

#include "vi/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "vi/errors.hpp"

namespace vi {

QuadratureRule make_rule(const std::string& name) {
  QuadratureRule r;
  r.name = name;
  if (name == "trapezoid") {
    r.nodes = {0.0, 1.0};
    r.weights = {0.5, 0.5};
    r.order = 2;
  } else if (name == "simpson") {
    r.nodes = {0.0, 0.5, 1.0};
    r.weights = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
    r.order = 4;
  } else if (name == "lobatto4") {
    const double off = 0.5 / std::sqrt(5.0);
    r.nodes = {0.0, 0.5 - off, 0.5 + off, 1.0};
    r.weights = {1.0 / 12.0, 5.0 / 12.0, 5.0 / 12.0, 1.0 / 12.0};
    r.order = 6;
  } else if (name == "gauss2_padded") {
    const double off = std::sqrt(3.0) / 6.0;
    r.nodes = {0.0, 0.5 - off, 0.5 + off, 1.0};
    r.weights = {0.0, 0.5, 0.5, 0.0};
    r.order = 4;
  } else if (name == "gauss3_padded") {
    const double off = std::sqrt(15.0) / 10.0;
    r.nodes = {0.0, 0.5 - off, 0.5, 0.5 + off, 1.0};
    r.weights = {0.0, 5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0, 0.0};
    r.order = 6;
  } else if (name == "euler_maclaurin2") {
    r.nodes = {0.0, 1.0};
    r.weights = {0.5, 0.5};
    r.order = 4;
    r.derivative_weights = DerivativeWeights{1.0 / 12.0, -1.0 / 12.0};
  } else {
    throw UnknownRule(name);
  }
  r.symmetric = true;  // every rule in the catalog is symmetric
  return r;
}

std::vector<std::string> rule_names() {
  return {"trapezoid", "simpson", "lobatto4", "gauss2_padded", "gauss3_padded", "euler_maclaurin2"};
}

bool has_symmetric_layout(const QuadratureRule& rule, double tol) {
  const std::size_t n = rule.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    if (std::abs(rule.nodes[i] + rule.nodes[j] - 1.0) > tol) return false;
    if (std::abs(rule.weights[i] - rule.weights[j]) > tol) return false;
  }
  if (rule.derivative_weights &&
      std::abs(rule.derivative_weights->start + rule.derivative_weights->end) > tol)
    return false;
  return true;
}

double integrate(const QuadratureRule& rule, double h, std::span<const double> samples,
                 std::optional<std::pair<double, double>> endpoint_derivatives) {
  if (samples.size() != rule.size())
    throw InvalidSpec("integrate: expected " + std::to_string(rule.size()) + " samples, got " +
                      std::to_string(samples.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) sum += rule.weights[i] * samples[i];
  double value = h * sum;
  if (rule.derivative_weights) {
    if (!endpoint_derivatives)
      throw MissingDerivatives("rule '" + rule.name + "' needs endpoint derivatives");
    value += h * h *
             (rule.derivative_weights->start * endpoint_derivatives->first +
              rule.derivative_weights->end * endpoint_derivatives->second);
  }
  return value;
}

double lagrange_basis(std::span<const double> d, int nu, double tau) {
  double value = 1.0;
  for (int j = 0; j < static_cast<int>(d.size()); ++j) {
    if (j == nu) continue;
    value *= (tau - d[j]) / (d[nu] - d[j]);
  }
  return value;
}

double lagrange_basis_deriv(std::span<const double> d, int nu, double tau) {
  const int n = static_cast<int>(d.size());
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    if (k == nu) continue;
    double term = 1.0 / (d[nu] - d[k]);
    for (int j = 0; j < n; ++j) {
      if (j == nu || j == k) continue;
      term *= (tau - d[j]) / (d[nu] - d[j]);
    }
    sum += term;
  }
  return sum;
}

Vec fd_grad(const std::function<double(const Vec&)>& f, const Vec& x, double step) {
  Vec g(x.size());
  Vec xp = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    xp[j] = x[j] + step;
    const double fp = f(xp);
    xp[j] = x[j] - step;
    const double fm = f(xp);
    xp[j] = x[j];
    g[j] = (fp - fm) / (2.0 * step);
  }
  return g;
}

Vec fd_grad_scaled(const std::function<double(const Vec&)>& f, const Vec& x, double base) {
  Vec g(x.size());
  Vec xp = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double step = base * std::max(1.0, std::abs(x[j]));
    xp[j] = x[j] + step;
    const double fp = f(xp);
    xp[j] = x[j] - step;
    const double fm = f(xp);
    xp[j] = x[j];
    g[j] = (fp - fm) / (2.0 * step);
  }
  return g;
}

Mat fd_jacobian(const VectorFunction& f, const Vec& x, double step) {
  Vec xp = x;
  Mat jac;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    xp[j] = x[j] + step;
    const Vec fp = f(xp);
    xp[j] = x[j] - step;
    const Vec fm = f(xp);
    xp[j] = x[j];
    if (j == 0) jac.resize(fp.size(), x.size());
    jac.col(j) = (fp - fm) / (2.0 * step);
  }
  return jac;
}

NewtonResult newton_solve(const VectorFunction& residual, const Vec& x0, const NewtonConfig& cfg,
                          const JacobianFunction& jacobian) {
  NewtonResult out;
  out.x = x0;
  Vec r = residual(out.x);
  if (r.size() != x0.size())
    throw InvalidSpec("newton_solve: residual dimension " + std::to_string(r.size()) +
                      " differs from unknown dimension " + std::to_string(x0.size()));
  out.residual_norm = r.norm();
  out.residual_history.push_back(out.residual_norm);

  int polish_left = cfg.polish;
  bool converged = out.residual_norm < cfg.tol;
  while (!converged || polish_left > 0) {
    if (converged) --polish_left;
    if (out.iterations >= cfg.max_iter) {
      if (converged) break;
      throw NoConvergence("newton_solve", out.iterations, out.residual_norm);
    }
    Mat jac;
    if (jacobian) {
      jac = jacobian(out.x);
    } else {
      const double step = cfg.fd_step * std::max(1.0, out.x.lpNorm<Eigen::Infinity>());
      jac = fd_jacobian(residual, out.x, step);
    }
    Eigen::FullPivLU<Mat> lu(jac);
    if (!lu.isInvertible()) throw SingularJacobian("newton_solve: singular Jacobian");
    const Vec candidate = out.x - lu.solve(r);
    const Vec r_candidate = residual(candidate);
    ++out.iterations;
    if (!r_candidate.allFinite()) throw NoConvergence("newton_solve", out.iterations, r_candidate.norm());
    if (converged && r_candidate.norm() > out.residual_norm) break;  // polish made no progress
    out.x = candidate;
    r = r_candidate;
    out.residual_norm = r.norm();
    out.residual_history.push_back(out.residual_norm);
    converged = converged || out.residual_norm < cfg.tol;
  }
  return out;
}

}  // namespace vi

#include "vi/diagnostics.hpp"

#include <cmath>

#include "vi/errors.hpp"

namespace vi {

double symplecticity_defect(const std::function<PhaseState(const PhaseState&)>& map, const PhaseState& z,
                            double step) {
  const Eigen::Index m = z.q.size();
  auto flat = [m](const PhaseState& s) {
    Vec y(2 * m);
    y << s.q, s.p;
    return y;
  };
  auto f = [&](const Vec& y) { return flat(map(PhaseState{y.head(m), y.tail(m)})); };
  const Mat jac = fd_jacobian(f, flat(z), step);
  Mat omega = Mat::Zero(2 * m, 2 * m);
  omega.topRightCorner(m, m) = Mat::Identity(m, m);
  omega.bottomLeftCorner(m, m) = -Mat::Identity(m, m);
  return (jac.transpose() * omega * jac - omega).norm();
}

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DegenerateData("least_squares: need at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DegenerateData("least_squares: abscissae are all equal");
  const double slope = sxy / sxx;
  return LineFit{slope, my - slope * mx};
}

double energy_drift_slope(const std::vector<double>& t, const std::vector<double>& energy_error) {
  return least_squares(t, energy_error).slope;
}

LineFit fit_order(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DegenerateData("estimate_order: need at least three (h, error) points");
  std::vector<double> lh, le;
  for (const auto& [h, e] : points) {
    if (!(h > 0.0)) throw DegenerateData("estimate_order: step sizes must be positive");
    if (!(e >= kErrorFloor)) continue;
    lh.push_back(std::log(h));
    le.push_back(std::log(e));
  }
  if (lh.size() < 2) throw DegenerateData("estimate_order: fewer than two errors above the floor");
  return least_squares(lh, le);
}

double estimate_order(const std::vector<std::pair<double, double>>& points) { return fit_order(points).slope; }

}  // namespace vi

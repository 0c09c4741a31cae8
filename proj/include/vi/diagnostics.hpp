#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "vi/systems.hpp"

namespace vi {

/// ||D Phi^T Omega D Phi - Omega||_F with D Phi from central differences.
double symplecticity_defect(const std::function<PhaseState(const PhaseState&)>& map, const PhaseState& z,
                            double step = 1e-4);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares slope of (t, E - E0).
double energy_drift_slope(const std::vector<double>& t, const std::vector<double>& energy_error);

inline constexpr double kErrorFloor = 1e-13;

/// Log-log fit of (h, error) pairs, dropping errors below kErrorFloor.
/// Throws DegenerateData for fewer than 3 points or fewer than 2 survivors.
LineFit fit_order(const std::vector<std::pair<double, double>>& points);
double estimate_order(const std::vector<std::pair<double, double>>& points);

}  // namespace vi

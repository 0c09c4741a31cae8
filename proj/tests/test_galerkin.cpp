#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "vi/diagnostics.hpp"
#include "vi/errors.hpp"
#include "vi/galerkin.hpp"

using namespace vi;
using oracle::scalar;

namespace {
// Trapezoidal rule on the linear interpolant.
double verlet_ld(const LagrangianSystem& sys, const Vec& q0, const Vec& q1, double h) {
  const Vec v = (q1 - q0) / h;
  return 0.5 * h * (sys.lagrangian(q0, v) + sys.lagrangian(q1, v));
}

double sho_global_error(const GalerkinConfig& cfg, double h, double T) {
  GalerkinIntegrator integ(cfg, builtin_sho());
  PhaseState z{scalar(1), scalar(0)};
  const int n = static_cast<int>(std::lround(T / h));
  for (int k = 0; k < n; ++k) z = integ.step(z, h);
  return std::hypot(z.q[0] - std::cos(T), z.p[0] + std::sin(T));
}
}  // namespace

TEST_CASE("config") {
  const auto c = make_galerkin_config(3, make_rule("lobatto4"));
  CHECK(c.control_times == std::vector<double>{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0});
  CHECK_THROWS_AS(make_galerkin_config(0, make_rule("trapezoid")), InvalidSpec);
}

TEST_CASE("interpolant examples") {
  const auto c1 = make_galerkin_config(1, make_rule("trapezoid"));
  const std::vector<Vec> pts{scalar(0.5), scalar(1.5)};
  const auto z = interpolant(c1, pts, 0.25, 0.2);
  CHECK(z.q[0] == doctest::Approx(0.75));
  CHECK(z.v[0] == doctest::Approx(5.0));

  const auto c2 = make_galerkin_config(2, make_rule("simpson"));
  const std::vector<Vec> p3{scalar(1.0), scalar(-2.0), scalar(0.5)};
  for (int nu = 0; nu < 3; ++nu) CHECK(interpolant(c2, p3, c2.control_times[nu], 0.3).q[0] == p3[nu][0]);
  const std::vector<Vec> flat{scalar(0.4), scalar(0.4), scalar(0.4)};
  CHECK(std::abs(interpolant(c2, flat, 0.37, 0.3).v[0]) < 1e-14);
}

TEST_CASE("s=1 trapezoid equals the piecewise-linear trapezoid formula") {
  oracle::Gen gen(61);
  const auto c = make_galerkin_config(1, make_rule("trapezoid"));
  for (const auto& sys : {builtin_pendulum(), builtin_sho(), builtin_coupled_pair()}) {
    for (int i = 0; i < 20; ++i) {
      const Vec q0 = gen.vec(sys.dim, 2.0), q1 = gen.vec(sys.dim, 2.0);
      const double h = gen.uniform(0.01, 0.5);
      const auto ld = galerkin_ld(c, sys, q0, q1, h);
      CHECK(std::abs(ld.value - verlet_ld(sys, q0, q1, h)) < 1e-12);
    }
  }
}

TEST_CASE("free particle Galerkin is exact") {
  const auto free = builtin_free_particle(2);
  Vec q0(2), q1(2);
  q0 << 0.1, 0.9;
  q1 << -0.4, 1.3;
  const double h = 0.3;
  for (int s = 1; s <= 3; ++s) {
    const auto c = make_galerkin_config(s, make_rule(s == 3 ? "lobatto4" : "simpson"));
    const auto ld = galerkin_ld(c, free, q0, q1, h);
    CHECK(ld.value == doctest::Approx((q1 - q0).squaredNorm() / (2 * h)).epsilon(1e-12));
    for (int nu = 0; nu <= s; ++nu)
      CHECK((ld.points[nu] - (q0 + c.control_times[nu] * (q1 - q0))).norm() < 1e-10);
    const auto st = galerkin_step(c, free, {q0, q1 - q0}, h);
    CHECK((st.z.q - (q0 + h * (q1 - q0))).norm() < 1e-9);
    CHECK((st.z.p - (q1 - q0)).norm() < 1e-9);
  }
}

TEST_CASE("s=2 simpson approximates the exact sho discrete Lagrangian") {
  const auto sho = builtin_sho();
  const auto c = make_galerkin_config(2, make_rule("simpson"));
  const double err = std::abs(galerkin_ld(c, sho, scalar(1), scalar(0.9), 0.2).value - oracle::sho_exact_ld(1, 0.9, 0.2));
  CHECK(err < std::pow(0.2, 5));
  std::vector<std::pair<double, double>> pts;
  for (double h : {0.4, 0.2, 0.1}) {
    const double q1 = std::cos(h);
    pts.emplace_back(h, std::abs(galerkin_ld(c, sho, scalar(1), scalar(q1), h).value - oracle::sho_exact_ld(1, q1, h)));
  }
  CHECK(estimate_order(pts) > 4.7);
}

TEST_CASE("stationarity and extremality") {
  const auto pend = builtin_pendulum();
  oracle::Gen gen(62);
  for (int s = 2; s <= 3; ++s) {
    const auto c = make_galerkin_config(s, make_rule("lobatto4"));
    const double h = 0.3;
    const auto ld = galerkin_ld(c, pend, scalar(0.4), scalar(0.7), h);
    CHECK(galerkin_stationarity(c, pend, ld.points, h).norm() < c.newton.tol);
    CHECK(galerkin_action(c, pend, ld.points, h) == doctest::Approx(ld.value).epsilon(1e-15));
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> dir(s);
      for (int nu = 1; nu < s; ++nu) dir[nu] = gen.uniform(-1, 1);
      const auto change = [&](double eps) {
        auto moved = ld.points;
        for (int nu = 1; nu < s; ++nu) moved[nu][0] += eps * dir[nu];
        return galerkin_action(c, pend, moved, h) - ld.value;
      };
      // no first-order term: the change scales like eps^2
      const double ratio = change(1e-3) / change(1e-4);
      CHECK(ratio == doctest::Approx(100.0).epsilon(0.05));
    }
  }
}

TEST_CASE("Galerkin translation invariance") {
  const auto pair = builtin_coupled_pair();
  Vec q0(2), q1(2);
  q0 << 0.2, -0.1;
  q1 << 0.4, 0.05;
  const Vec shift = -2.3 * pair.symmetry_generators[0](q0);
  for (int s = 1; s <= 2; ++s) {
    const auto c = make_galerkin_config(s, make_rule("simpson"));
    CHECK(std::abs(galerkin_ld(c, pair, q0, q1, 0.2).value - galerkin_ld(c, pair, q0 + shift, q1 + shift, 0.2).value) <
          1e-11);
  }
}

TEST_CASE("Galerkin step is symplectic") {
  const auto pend = builtin_pendulum();
  for (int s = 1; s <= 2; ++s) {
    const auto c = make_galerkin_config(s, make_rule(s == 1 ? "trapezoid" : "simpson"));
    const auto map = [&](const PhaseState& z) { return galerkin_step(c, pend, z, 0.1).z; };
    CHECK(symplecticity_defect(map, {scalar(0.3), scalar(0.9)}) < 1e-6);
  }
}

TEST_CASE("Galerkin global orders on sho") {
  std::vector<std::pair<double, double>> p1, p2;
  for (double h : {0.2, 0.1, 0.05, 0.025}) {
    p1.emplace_back(h, sho_global_error(make_galerkin_config(1, make_rule("trapezoid")), h, 5.0));
    p2.emplace_back(h, sho_global_error(make_galerkin_config(2, make_rule("simpson")), h, 5.0));
  }
  CHECK(std::abs(estimate_order(p1) - 2.0) < 0.2);
  CHECK(estimate_order(p2) >= 3.8);
}

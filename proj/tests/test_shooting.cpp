#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "vi/diagnostics.hpp"
#include "vi/errors.hpp"
#include "vi/shooting.hpp"

using namespace vi;
using oracle::scalar;

namespace {
ShootingConfig cfg(const std::string& method, const std::string& rule, StateSpace space = StateSpace::tangent) {
  return make_shooting_config(make_method(method, space), make_rule(rule));
}

struct Combo {
  std::string method, rule;
  int order;
};
const std::vector<Combo> kCombos{{"explicit_midpoint", "trapezoid", 2}, {"rk4", "simpson", 4},
                                 {"implicit_midpoint", "trapezoid", 2}, {"rk4", "euler_maclaurin2", 4},
                                 {"gauss2", "gauss2_padded", 4}};
}  // namespace

TEST_CASE("the sho action oracle agrees with quadrature along the exact solution") {
  for (double h : {0.05, 0.2, 0.4, 1.0})
    CHECK(oracle::sho_exact_ld(1.0, 0.9, h) ==
          doctest::Approx(oracle::sho_action_by_quadrature(1.0, 0.9, h)).epsilon(1e-12));
}

TEST_CASE("free particle discrete Lagrangian is exact") {
  const auto free = builtin_free_particle(2);
  Vec q0(2), q1(2);
  q0 << 0.3, -0.4;
  q1 << 1.1, 0.25;
  const double h = 0.3;
  const double exact = (q1 - q0).squaredNorm() / (2 * h);
  for (const auto& c : kCombos) {
    const auto sc = cfg(c.method, c.rule);
    const auto ld = discrete_lagrangian(sc, free, q0, q1, h);
    CHECK(ld.value == doctest::Approx(exact).epsilon(1e-13));
    CHECK((ld.nodes.back().q - q1).norm() < 1e-12);
    CHECK(ld.value == doctest::Approx(shooting_action(sc.rule, free, ld.nodes, h)).epsilon(1e-15));
    CHECK((d1_ld(sc, free, q0, q1, h) + (q1 - q0) / h).norm() < 1e-9);
    CHECK((d2_ld(sc, free, q0, q1, h) - (q1 - q0) / h).norm() < 1e-9);
    CHECK(self_adjointness_residual(sc, free, q0, q1, h) < 1e-14);
  }
}

TEST_CASE("sho discrete Lagrangian examples") {
  const auto sho = builtin_sho();
  for (const auto& c : kCombos) {
    const auto sc = cfg(c.method, c.rule);
    CHECK(std::abs(discrete_lagrangian(sc, sho, scalar(0), scalar(0), 0.7).value) < 1e-15);
    const double h = 0.2;
    const double err = std::abs(discrete_lagrangian(sc, sho, scalar(1), scalar(0.9), h).value -
                                oracle::sho_exact_ld(1, 0.9, h));
    CAPTURE(c.method);
    CHECK(err < std::pow(h, c.order + 1));
  }
}

TEST_CASE("endpoint derivatives against the exact sho derivatives") {
  // endpoints of the exact trajectory through (1, 0), so the error is h-asymptotic
  const auto sho = builtin_sho();
  for (const auto& c : kCombos) {
    const auto sc = cfg(c.method, c.rule);
    std::vector<std::pair<double, double>> e1, e2;
    for (double h : {0.2, 0.1, 0.05}) {
      const double q0 = 1.0, q1 = std::cos(h);
      e1.emplace_back(h, std::abs(d1_ld(sc, sho, scalar(q0), scalar(q1), h)[0] - oracle::sho_exact_d1(q0, q1, h)));
      e2.emplace_back(h, std::abs(d2_ld(sc, sho, scalar(q0), scalar(q1), h)[0] - oracle::sho_exact_d2(q0, q1, h)));
      CHECK(e1.back().second < std::pow(h, c.order + 1) + 1e-10);
      CHECK(e2.back().second < std::pow(h, c.order + 1) + 1e-10);
    }
    CAPTURE(c.method);
    CAPTURE(c.rule);
    CHECK(estimate_order(e1) > c.order + 0.7);
    CHECK(estimate_order(e2) > c.order + 0.7);
  }
}

TEST_CASE("coincident endpoints consistency") {
  const auto pend = builtin_pendulum();
  const auto sc = cfg("implicit_midpoint", "trapezoid");
  const double q = 0.8;
  for (double h : {0.1, 0.05}) {
    const double sum = d1_ld(sc, pend, scalar(q), scalar(q), h)[0] + d2_ld(sc, pend, scalar(q), scalar(q), h)[0];
    CHECK(std::abs(sum - h * pend.dL_dq(scalar(q), scalar(0))[0]) < 2 * h * h);
  }
}

TEST_CASE("order of the discrete Lagrangian") {
  const auto sho = builtin_sho();
  const std::vector<std::pair<std::string, std::string>> combos{{"explicit_midpoint", "trapezoid"},
                                                                {"rk4", "simpson"}};
  const double slopes[] = {3.0, 5.0};
  for (int k = 0; k < 2; ++k) {
    const auto sc = cfg(combos[k].first, combos[k].second);
    std::vector<std::pair<double, double>> pts;
    for (double h : {0.4, 0.2, 0.1, 0.05}) {
      const double q1 = std::cos(h);
      pts.emplace_back(h, std::abs(discrete_lagrangian(sc, sho, scalar(1), scalar(q1), h).value -
                                   oracle::sho_exact_ld(1, q1, h)));
    }
    CHECK(estimate_order(pts) >= slopes[k] - 0.2);
  }
}

TEST_CASE("step_lagrangian examples") {
  const auto sho = builtin_sho();
  const auto sc = cfg("explicit_midpoint", "trapezoid");
  const double h = 0.2;
  const auto step = step_lagrangian(sc, sho, {scalar(1), scalar(0)}, h);
  CHECK(std::hypot(step.z.q[0] - std::cos(h), step.z.p[0] + std::sin(h)) < h * h * h);

  const auto free = builtin_free_particle(2);
  Vec q(2), p(2);
  q << 0.1, 0.2;
  p << -1.0, 0.5;
  const auto fs = step_lagrangian(sc, free, {q, p}, 0.3);
  CHECK((fs.z.q - (q + 0.3 * p)).norm() < 1e-9);
  CHECK((fs.z.p - p).norm() < 1e-9);

  const auto pend = builtin_pendulum();
  double prev = 1.0;
  for (double hh : {0.1, 0.01, 0.001}) {
    const auto s = step_lagrangian(sc, pend, {scalar(0.5), scalar(0.3)}, hh);
    const double dist = std::hypot(s.z.q[0] - 0.5, s.z.p[0] - 0.3);
    CHECK(dist < 2 * hh);
    CHECK(dist < prev);
    prev = dist;
  }
}

TEST_CASE("hamiltonian form agrees with the Lagrangian form") {
  const auto sho = builtin_sho();
  const auto lag = cfg("implicit_midpoint", "trapezoid");
  const auto ham = cfg("implicit_midpoint", "trapezoid", StateSpace::phase);
  const PhaseState z{scalar(0.9), scalar(-0.4)};
  const auto a = step_lagrangian(lag, sho, z, 0.2);
  const auto b = step_hamiltonian(ham, sho, z, 0.2);
  CHECK(std::abs(a.z.q[0] - b.z.q[0]) < 1e-9);
  CHECK(std::abs(a.z.p[0] - b.z.p[0]) < 1e-9);

  const auto free = builtin_free_particle(1);
  const auto f = step_hamiltonian(ham, free, {scalar(0.2), scalar(1.5)}, 0.4);
  CHECK(std::abs(f.z.q[0] - 0.8) < 1e-9);
  CHECK(std::abs(f.z.p[0] - 1.5) < 1e-9);

  CHECK_THROWS_AS(step_hamiltonian(lag, sho, z, 0.2), InvalidSpec);
}

TEST_CASE("hamiltonian single-step order") {
  const auto sho = builtin_sho();
  const auto ham = cfg("rk4", "simpson", StateSpace::phase);
  std::vector<std::pair<double, double>> pts;
  for (double h : {0.4, 0.2, 0.1}) {
    const auto s = step_hamiltonian(ham, sho, {scalar(1), scalar(0)}, h);
    pts.emplace_back(h, std::hypot(s.z.q[0] - std::cos(h), s.z.p[0] + std::sin(h)));
  }
  CHECK(estimate_order(pts) > 4.5);  // local error h^5
}

TEST_CASE("type two generating function") {
  const auto free = builtin_free_particle(1);
  const auto ham = cfg("rk4", "simpson", StateSpace::phase);
  const double q0 = 0.3, p1 = -0.7, h = 0.25;
  const auto hd = discrete_hamiltonian_plus(ham, free, scalar(q0), scalar(p1), h);
  CHECK(hd.value == doctest::Approx(p1 * q0 + h * p1 * p1 / 2).epsilon(1e-13));
  const auto s = step_type2(ham, free, {scalar(q0), scalar(p1)}, h);
  CHECK(std::abs(s.z.q[0] - (q0 + h * p1)) < 1e-9);
  CHECK(std::abs(s.z.p[0] - p1) < 1e-9);

  const auto sho = builtin_sho();
  const auto hd0 = discrete_hamiltonian_plus(ham, sho, scalar(q0), scalar(p1), 1e-8);
  CHECK(hd0.value == doctest::Approx(p1 * q0).epsilon(1e-7));

  const PhaseState z{scalar(0.6), scalar(0.8)};
  const auto a = step_type2(ham, sho, z, 0.1);
  const auto b = step_hamiltonian(ham, sho, z, 0.1);
  CHECK(std::abs(a.z.q[0] - b.z.q[0]) < 1e-8);
  CHECK(std::abs(a.z.p[0] - b.z.p[0]) < 1e-8);

  // With midpoint + trapezoid the two maps differ at O(h^5). Symbolic
  // elimination of both maps for this oscillator state gives the q gap
  // 0.05 h^5 - 0.0375 h^6 + O(h^8) and equal momenta.
  const auto mid = cfg("implicit_midpoint", "trapezoid", StateSpace::phase);
  const auto c2 = step_type2(mid, sho, z, 0.1);
  const auto d2 = step_hamiltonian(mid, sho, z, 0.1);
  CHECK((d2.z.q[0] - c2.z.q[0]) == doctest::Approx(4.6250289054139415e-07).epsilon(1e-3));
  CHECK(std::abs(c2.z.p[0] - d2.z.p[0]) < 1e-9);
}

TEST_CASE("self-adjointness residual") {
  const auto pend = builtin_pendulum();
  const auto mid = cfg("implicit_midpoint", "trapezoid");
  const auto emid = cfg("explicit_midpoint", "trapezoid");
  const auto euler = cfg("euler", "trapezoid");
  oracle::Gen gen(51);
  for (int i = 0; i < 10; ++i) {
    const double q0 = gen.uniform(-1, 1), q1 = q0 + gen.uniform(-0.2, 0.2);
    CHECK(self_adjointness_residual(mid, pend, scalar(q0), scalar(q1), 0.2) < 1e-10);
    CHECK(self_adjointness_residual(euler, pend, scalar(q0), scalar(q1), 0.2) > 1e-6);
    CHECK(self_adjointness_residual(emid, pend, scalar(q0), scalar(q1), 0.2) > 1e-10);
  }
}

TEST_CASE("discrete momentum") {
  const auto free = builtin_free_particle(2);
  const auto sc = cfg("rk4", "simpson");
  Vec q0(2), q1(2);
  q0 << 0.0, 1.0;
  q1 << 0.5, 0.8;
  const double h = 0.25;
  CHECK(discrete_momentum(sc, free, q0, q1, h, free.symmetry_generators[0]) ==
        doctest::Approx((q1 - q0)[0] / h).epsilon(1e-9));
  CHECK(discrete_momentum(sc, free, q0, q1, h, [](const Vec&) { return Vec::Zero(2); }) == 0.0);
}

TEST_CASE("translation invariance of the discrete Lagrangian") {
  const auto pair = builtin_coupled_pair();
  Vec q0(2), q1(2);
  q0 << 0.2, -0.5;
  q1 << 0.35, -0.3;
  const Vec shift = 1.7 * pair.symmetry_generators[0](q0);
  for (const auto& c : kCombos) {
    const auto sc = cfg(c.method, c.rule);
    const double a = discrete_lagrangian(sc, pair, q0, q1, 0.2).value;
    const double b = discrete_lagrangian(sc, pair, q0 + shift, q1 + shift, 0.2).value;
    CHECK(std::abs(a - b) < 1e-12);
  }
}

TEST_CASE("shooting integrator conserves momentum and is symplectic") {
  const auto pair = builtin_coupled_pair();
  const auto& gen = pair.symmetry_generators[0];
  for (auto form : {ShootingForm::lagrangian, ShootingForm::hamiltonian, ShootingForm::type2}) {
    const auto space = form == ShootingForm::lagrangian ? StateSpace::tangent : StateSpace::phase;
    ShootingIntegrator integ(cfg("rk4", "simpson", space), pair, form);
    PhaseState z{Vec(2), Vec(2)};
    z.q << 1.0, 0.0;
    z.p << 0.3, 0.1;
    const double j0 = z.p.dot(gen(z.q));
    double worst = 0.0;
    for (int k = 0; k < 30; ++k) {
      z = integ.step(z, 0.1);
      worst = std::max(worst, std::abs(z.p.dot(gen(z.q)) - j0));
    }
    CHECK(worst < 1e-8);
  }

  const auto pend = builtin_pendulum();
  const auto sc = cfg("implicit_midpoint", "trapezoid");
  const auto map = [&](const PhaseState& z) { return step_lagrangian(sc, pend, z, 0.1).z; };
  CHECK(symplecticity_defect(map, {scalar(0.7), scalar(-0.2)}) < 1e-6);
}

TEST_CASE("sho global order from the integrator") {
  const auto sho = builtin_sho();
  std::vector<std::pair<double, double>> pts;
  for (double h : {0.2, 0.1, 0.05}) {
    ShootingIntegrator integ(cfg("explicit_midpoint", "trapezoid"), sho);
    PhaseState z{scalar(1), scalar(0)};
    const int n = static_cast<int>(std::lround(2.0 / h));
    for (int k = 0; k < n; ++k) z = integ.step(z, h);
    pts.emplace_back(h, std::hypot(z.q[0] - std::cos(2.0), z.p[0] + std::sin(2.0)));
  }
  CHECK(estimate_order(pts) == doctest::Approx(2.0).epsilon(0.1));
}

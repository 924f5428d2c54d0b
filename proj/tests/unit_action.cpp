#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lapsewick/adm_triple.hpp"
#include "lapsewick/diffeo.hpp"
#include "lapsewick/scalar_action.hpp"
#include "lapsewick/wick.hpp"

using namespace lapsewick;

namespace {
constexpr double kPi = 3.14159265358979323846;

Background curved() {
  return curved_background(1, Signature::Lorentzian, 1.0, 1.0, 0.08, 42);
}

Field<double> trig_field(const Grid& g) {
  return sample_field<double>(g, [](double t, const Vec& x) {
    return 0.3 * std::cos(2.0 * kPi * (t - x[0])) +
           0.1 * std::sin(2.0 * kPi * x[0]);
  });
}
}  // namespace

TEST_CASE("flat massless action matches the closed-form mode sum") {
  // On the flat torus with phi = A cos(2 pi (t - x)) the continuum
  // Lorentzian action density is (A^2/2)[w_t^2 sin^2 - w_x^2 sin^2];
  // with w_t = w_x the two gradient terms cancel. The discrete central
  // difference preserves the cancellation exactly.
  Grid g(1, 16, 16, 1.0, 1.0);
  Background bg = flat_background(1, Signature::Lorentzian);
  AdmTriple tri = sample_triple(bg, g);
  auto phi = sample_field<double>(g, [](double t, const Vec& x) {
    return 0.5 * std::cos(2.0 * kPi * (t - x[0]));
  });
  cplx s = evaluate_action(tri, phi, zero_potential());
  CHECK(std::abs(s) < 1e-13);
}

TEST_CASE("flat quadratic action matches the discrete mode symbol") {
  // For phi = A cos(2 pi t) on the unit torus the exact discrete action is
  // (A^2/2)[ sin^2(2 pi h)/h^2 * (1/2) - m^2/2 ] summed with cell volume:
  // temporal term (1/2N) e0^2 with central differences, potential -m^2/2 phi^2.
  Grid g(1, 32, 4, 1.0, 1.0);
  Background bg = flat_background(1, Signature::Lorentzian);
  AdmTriple tri = sample_triple(bg, g);
  const double A = 0.7, m2 = 1.3, h = g.ht();
  auto phi = sample_field<double>(g, [=](double t, const Vec&) {
    return A * std::cos(2.0 * kPi * t);
  });
  cplx s = evaluate_action(tri, phi, quadratic_potential(m2));
  double wsq = std::pow(std::sin(2.0 * kPi * h) / h, 2);
  double expect = 0.5 * (A * A / 2.0) * wsq - m2 * (A * A / 2.0) / 2.0;
  CHECK(std::abs(s - expect) < 1e-12);
}

TEST_CASE("action decomposes into signature parts for every angle") {
  Grid g(1, 12, 12, 1.0, 1.0);
  AdmTriple tm = sample_triple(curved(), g);
  AdmTriple tp = tm;
  tp.set_signature(Signature::Euclidean);
  Field<double> phi = trig_field(g);
  Potential U = quartic_potential(0.8, 0.4);
  cplx sm = evaluate_action(tm, phi, U);
  cplx sp = evaluate_action(tp, phi, U);
  for (double theta : {0.1, 0.9, kPi / 2.0, 2.7}) {
    cplx st = evaluate_action(wick_rotate_fiducial(tm, theta), phi, U);
    cplx split = std::cos(theta) * sm + cplx(0.0, 1.0) * std::sin(theta) * sp;
    CHECK(std::abs(st - split) < 1e-12 * std::abs(st));
    CHECK(st.imag() > 0.0);
  }
}

TEST_CASE("negative potentials are rejected") {
  Grid g(1, 4, 4, 1.0, 1.0);
  AdmTriple tri = sample_triple(curved(), g);
  Field<double> phi(g, 1.0);
  Potential bad{[](double) { return -1.0; }, [](double) { return 0.0; }};
  CHECK_THROWS_AS(evaluate_action(tri, phi, bad), std::domain_error);
}

TEST_CASE("energy density is nonnegative for Lorentzian data") {
  Grid g(1, 12, 12, 1.0, 1.0);
  AdmTriple tri = sample_triple(curved(), g);
  Field<double> phi = trig_field(g);
  Field<double> em =
      energy_momentum_bitransversal(tri, phi, quadratic_potential(0.5));
  double mn = 1e300;
  for (std::size_t i = 0; i < em.size(); ++i) mn = std::min(mn, em[i]);
  CHECK(mn >= -1e-14);
  AdmTriple rot = wick_rotate_fiducial(tri, 0.4);
  CHECK_THROWS_AS(
      energy_momentum_bitransversal(rot, phi, quadratic_potential(0.5)),
      std::invalid_argument);
}

TEST_CASE("gradient sum combination is a scalar under a boost") {
  Background bg = flat_background(1, Signature::Lorentzian);
  ScalarFn phi = [](double t, const Vec& x) {
    return 0.4 * std::cos(2.0 * kPi * (t + x[0]));
  };
  ScalarGradFn grad = [](double t, const Vec& x) {
    StVecR g2(2);
    double s = -0.4 * 2.0 * kPi * std::sin(2.0 * kPi * (t + x[0]));
    g2 << s, s;
    return g2;
  };
  Grid g(1, 8, 8, 1.0, 1.0);
  DiffeoMap m = boost_map(1, 0.45);
  TwoChartReport rep = gradient_combination_transform(
      bg, phi, m, g, 1e-3, GradientCombination::Sum, &grad);
  CHECK(rep.max_residual < 1e-10);
}

TEST_CASE("difference combination follows the closed-form law") {
  Background bg = curved();
  ScalarFn phi = [](double t, const Vec& x) {
    return 0.3 * std::cos(2.0 * kPi * (t - x[0]));
  };
  ScalarGradFn grad = [](double t, const Vec& x) {
    StVecR g2(2);
    double s = -0.3 * 2.0 * kPi * std::sin(2.0 * kPi * (t - x[0]));
    g2 << s, -s;
    return g2;
  };
  Grid g(1, 6, 6, 1.0, 1.0);
  DiffeoMap m = boost_map(1, 0.3);
  TwoChartReport rep = gradient_combination_transform(
      bg, phi, m, g, 1e-3, GradientCombination::Difference, &grad);
  CHECK(rep.max_residual < 1e-10);
}

TEST_CASE("stencil chart samples agree with analytic ones at O(h^2)") {
  Background bg = curved();
  ScalarFn phi = [](double t, const Vec& x) {
    return 0.3 * std::cos(2.0 * kPi * (t - x[0]));
  };
  ScalarGradFn grad = [](double t, const Vec& x) {
    StVecR g2(2);
    double s = -0.3 * 2.0 * kPi * std::sin(2.0 * kPi * (t - x[0]));
    g2 << s, -s;
    return g2;
  };
  DiffeoMap m = shear_map(1, 0.05, 1, 1.0);
  Point p;
  p.t = 0.3;
  p.x = Vec::Constant(1, 0.4);
  ChartSample exact = chart_sample(bg, phi, m, p, 0.0, &grad);
  double e1 = 0.0, e2 = 0.0;
  for (double h : {2e-3, 1e-3}) {
    ChartSample st = chart_sample(bg, phi, m, p, h);
    double e = std::abs(st.e0 - exact.e0) + std::abs(st.dphi[0] - exact.dphi[0]);
    (h == 2e-3 ? e1 : e2) = e;
  }
  CHECK(e1 / e2 > 3.5);
  CHECK(e1 / e2 < 4.5);
}

TEST_CASE("complex Lagrangian density is chart independent") {
  Background bg = curved();
  ScalarFn phi = [](double t, const Vec& x) {
    return 0.3 * std::cos(2.0 * kPi * (t - x[0]));
  };
  Grid g(1, 8, 8, 1.0, 1.0);
  DiffeoMap m = boost_map(1, 0.3);
  LagrangianScalarReport r32, r16;
  for (int n : {16, 32}) {
    Grid gn(1, n, n, 1.0, 1.0);
    LagrangianScalarReport rr = lagrangian_scalar_residual(
        bg, phi, quadratic_potential(1.0), m, kPi / 5.0, gn,
        std::min(gn.ht(), gn.hx()));
    (n == 16 ? r16 : r32) = rr;
  }
  CHECK(r16.scalar_residual / r32.scalar_residual > 3.0);
  CHECK(r16.scalar_residual / r32.scalar_residual < 5.0);
  CHECK(r32.decomposition_residual < 1e-12);
}

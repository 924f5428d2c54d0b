#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "lapsewick/hessian.hpp"
#include "lapsewick/spectral.hpp"
#include "lapsewick/wick.hpp"

using namespace lapsewick;

namespace {
constexpr double kPi = 3.14159265358979323846;

/// Independent flat-torus oracle: eigenvalues of the rotated fluctuation
/// operator are, mode by mode, the discrete symbols of the forward/backward
/// difference pairs,
///   tau = 2 (1 - cos(k_t h_t)) / h_t^2,  sigma likewise per x axis,
///   lambda = -sin(theta) (tau + sigma + m2) - i cos(theta) (-tau + sigma + m2).
std::vector<cplx> flat_symbol_spectrum(const Grid& g, double m2, double theta) {
  std::vector<cplx> out;
  const double ht = g.ht(), hx = g.hx();
  for (int kt = 0; kt < g.nt(); ++kt) {
    double tau = 2.0 * (1.0 - std::cos(2.0 * kPi * kt / g.nt())) / (ht * ht);
    std::vector<int> ks(g.dim(), 0);
    int total = 1;
    for (int a = 0; a < g.dim(); ++a) total *= g.nx();
    for (int lin = 0; lin < total; ++lin) {
      int rem = lin;
      double sigma = 0.0;
      for (int a = 0; a < g.dim(); ++a) {
        int kx = rem % g.nx();
        rem /= g.nx();
        sigma += 2.0 * (1.0 - std::cos(2.0 * kPi * kx / g.nx())) / (hx * hx);
      }
      double plus = tau + sigma + m2;
      double minus = -tau + sigma + m2;
      out.emplace_back(-std::sin(theta) * plus, -std::cos(theta) * minus);
    }
  }
  return out;
}

void sort_by_re_im(std::vector<cplx>& v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

HessianOperator curved_operator(double theta) {
  Background bg = curved_background(1, Signature::Lorentzian, 1.0, 1.0, 0.08, 7);
  Grid g(1, 12, 12, 1.0, 1.0);
  AdmTriple tri = sample_triple(bg, g);
  auto V = sample_field<double>(g, [](double t, const Vec& x) {
    return 1.0 + 0.3 * std::cos(2.0 * kPi * t) * std::cos(2.0 * kPi * x[0]);
  });
  return assemble_hessian(tri, V, theta);
}
}  // namespace

TEST_CASE("flat-torus spectrum matches the mode symbols") {
  Grid g(1, 10, 12, 1.0, 1.0);
  AdmTriple tri = sample_triple(flat_background(1, Signature::Lorentzian), g);
  const double m2 = 1.4;
  for (double theta : {0.3, kPi / 2.0, 2.4}) {
    HessianOperator op = assemble_hessian(tri, Field<double>(g, m2), theta);
    std::vector<cplx> got = dense_eigenvalues(op.dense_delta());
    std::vector<cplx> want = flat_symbol_spectrum(g, m2, theta);
    sort_by_re_im(got);
    sort_by_re_im(want);
    REQUIRE(got.size() == want.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i)
      worst = std::max(worst, std::abs(got[i] - want[i]));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("signature parts are exactly self-adjoint in the weighted product") {
  HessianOperator op = curved_operator(0.9);
  CHECK(op.self_adjoint_residual() < 1e-12);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  const Eigen::Index n = op.weight.size();
  for (int k = 0; k < 5; ++k) {
    Eigen::VectorXcd f(n), h(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      f[i] = cplx(nd(rng), nd(rng));
      h[i] = cplx(nd(rng), nd(rng));
    }
    cplx a = weighted_inner(op, f, op.apply_dplus(h));
    cplx b = weighted_inner(op, op.apply_dplus(f), h);
    CHECK(std::abs(a - b) < 1e-10 * std::abs(a));
    cplx c = weighted_inner(op, f, op.apply_dminus(h));
    cplx d = weighted_inner(op, op.apply_dminus(f), h);
    CHECK(std::abs(c - d) < 1e-10 * std::max(1.0, std::abs(c)));
  }
}

TEST_CASE("the angle and its reflection are mutually adjoint") {
  for (double theta : {0.4, 1.1, 2.9}) {
    HessianOperator op = curved_operator(theta);
    HessianOperator opr = curved_operator(kPi - theta);
    CHECK(adjoint_residual(op, opr, 64, 11) < 1e-12);
  }
}

TEST_CASE("numerical range stays inside the closed wedge") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> nd;
  for (double theta : {0.2, 1.5, 2.8}) {
    HessianOperator op = curved_operator(theta);
    const Eigen::Index n = op.weight.size();
    for (int k = 0; k < 200; ++k) {
      Eigen::VectorXcd f(n);
      for (Eigen::Index i = 0; i < n; ++i) f[i] = cplx(nd(rng), nd(rng));
      // <f, Delta f> = -sin(theta) <f,D+ f> - i cos(theta) <f,D- f> with both
      // quadratic forms real, so it suffices that |<f,D- f>| <= <f,D+ f>.
      double plus = weighted_inner(op, f, op.apply_dplus(f)).real();
      double minus = weighted_inner(op, f, op.apply_dminus(f)).real();
      CHECK(std::abs(minus) - plus <= 1e-12 * std::max(1.0, plus));
    }
  }
}

TEST_CASE("spectral report flags no wedge violations on curved data") {
  for (double theta : {0.4, 1.2, 2.6}) {
    SpectralReport rep = spectral_report(curved_operator(theta));
    CHECK(rep.violations == 0);
    CHECK(rep.wedge_margin >= -1e-10);
    CHECK(rep.theta == theta);
    CHECK(!rep.eigenvalues.empty());
  }
}

TEST_CASE("spectral report serializes to stable JSON") {
  SpectralReport rep = spectral_report(curved_operator(1.2));
  std::string j1 = to_json(rep);
  std::string j2 = to_json(spectral_report(curved_operator(1.2)));
  CHECK(j1 == j2);
  CHECK(j1.find("\"theta\"") != std::string::npos);
  CHECK(j1.find("\"wedge_margin\"") != std::string::npos);
  CHECK(j1.find("\"eigenvalues\"") != std::string::npos);
  CHECK(j1.find("\"violations\"") != std::string::npos);
}

TEST_CASE("assembly rejects rotated triples and negative potentials") {
  Grid g(1, 6, 6, 1.0, 1.0);
  AdmTriple tri = sample_triple(flat_background(1, Signature::Lorentzian), g);
  CHECK_THROWS_AS(
      assemble_hessian(wick_rotate_fiducial(tri, 0.5), Field<double>(g, 1.0),
                       0.5),
      std::domain_error);
  CHECK_THROWS_AS(assemble_hessian(tri, Field<double>(g, -1.0), 0.5),
                  std::domain_error);
}

TEST_CASE("two-chart application of the operator converges at O(h^2)") {
  Background bg = curved_background(1, Signature::Lorentzian, 1.0, 1.0, 0.06, 3);
  ScalarFn phi = [](double t, const Vec& x) {
    return 0.4 * std::cos(2.0 * kPi * (t - x[0]));
  };
  ScalarFn V = [](double, const Vec&) { return 1.0; };
  DiffeoMap m = boost_map(1, 0.3);
  Grid g(1, 4, 4, 1.0, 1.0);
  double r1 = hessian_invariance_residual(bg, phi, V, m, 0.8, g, 2e-2);
  double r2 = hessian_invariance_residual(bg, phi, V, m, 0.8, g, 1e-2);
  CHECK(r1 / r2 > 3.0);
  CHECK(r1 / r2 < 5.0);
  CHECK(r2 < 5e-2);
}

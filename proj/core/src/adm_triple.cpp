#include "lapsewick/adm_triple.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace lapsewick {

AdmTriple::AdmTriple(const Grid& g, Signature sig)
    : grid_(g),
      sig_(sig),
      lapse_(g.size(), cplx(1.0)),
      shift_(g.size(), CVec::Zero(g.dim())),
      gamma_(g.size(), CMat::Identity(g.dim(), g.dim())),
      points_(g.size()) {
  for (std::size_t i = 0; i < g.size(); ++i) points_[i] = g.point(i);
}

void AdmTriple::validate() const {
  const int d = grid_.dim();
  for (std::size_t i = 0; i < size(); ++i) {
    const CMat& g = gamma_[i];
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b)
        if (std::abs(g(a, b) - g(b, a)) > 1e-12)
          throw std::domain_error("AdmTriple: gamma not symmetric");
    if (!rotated()) {
      if (std::abs(lapse_[i].imag()) > 1e-14 || lapse_[i].real() <= 0.0)
        throw std::domain_error(
            "AdmTriple: un-rotated lapse must be real positive");
      Mat gr(d, d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) gr(a, b) = g(a, b).real();
      Eigen::SelfAdjointEigenSolver<Mat> es(gr);
      if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::domain_error("AdmTriple: gamma not positive definite");
    } else {
      const double want = -*theta_;
      const double got = std::arg(lapse_[i]);
      double diff = std::remainder(got - want, 2.0 * std::numbers::pi);
      if (std::abs(diff) > 1e-10)
        throw std::domain_error("AdmTriple: rotated lapse phase mismatch");
    }
  }
}

AdmTriple sample_triple(const Background& bg, const Grid& g) {
  AdmTriple tr(g, bg.sig);
  tr.set_rotation(bg.theta);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Point p = g.point(i);
    tr.set_value(i, bg.at(p.t, p.x));
  }
  return tr;
}

Background flat_background(int d, Signature sig) {
  Background bg;
  bg.sig = sig;
  bg.lapse = [](double, const Vec&) { return cplx(1.0); };
  bg.shift = [d](double, const Vec&) { return CVec(CVec::Zero(d)); };
  bg.gamma = [d](double, const Vec&) { return CMat(CMat::Identity(d, d)); };
  return bg;
}

Background curved_background(int d, Signature sig, double extent_t,
                             double extent_x, double eps, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double wt = 2.0 * std::numbers::pi / extent_t;
  const double wx = 2.0 * std::numbers::pi / extent_x;

  // One (kt, kx, phase, amplitude) mode bundle per scalar component.
  struct Mode {
    int kt, kx, ax;
    double pht, phx, amp;
  };
  auto draw_modes = [&](int count) {
    std::vector<Mode> m(count);
    for (auto& mo : m) {
      mo.kt = 1 + static_cast<int>(rng() % 2);
      mo.kx = 1 + static_cast<int>(rng() % 2);
      mo.ax = static_cast<int>(rng() % d);
      mo.pht = unit(rng) * std::numbers::pi;
      mo.phx = unit(rng) * std::numbers::pi;
      mo.amp = unit(rng);
    }
    return m;
  };
  auto eval_modes = [wt, wx](const std::vector<Mode>& ms, double t,
                             const Vec& x) {
    double s = 0.0;
    for (const auto& m : ms)
      s += m.amp * std::cos(m.kt * wt * t + m.pht) *
           std::cos(m.kx * wx * x[m.ax] + m.phx);
    return s;
  };

  auto lapse_modes = draw_modes(3);
  std::vector<std::vector<Mode>> shift_modes(d);
  for (int a = 0; a < d; ++a) shift_modes[a] = draw_modes(2);
  std::vector<std::vector<Mode>> gamma_modes(d * d);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) gamma_modes[a * d + b] = draw_modes(2);

  Background bg;
  bg.sig = sig;
  bg.lapse = [=](double t, const Vec& x) {
    return cplx(1.0 + eps * eval_modes(lapse_modes, t, x));
  };
  bg.shift = [=](double t, const Vec& x) {
    CVec s(d);
    for (int a = 0; a < d; ++a) s[a] = eps * eval_modes(shift_modes[a], t, x);
    return s;
  };
  bg.gamma = [=](double t, const Vec& x) {
    CMat g = CMat::Identity(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) {
        cplx pert = eps * eval_modes(gamma_modes[a * d + b], t, x);
        if (a == b)
          g(a, a) += pert;
        else
          g(a, b) = g(b, a) = 0.5 * pert;
      }
    return g;
  };
  return bg;
}

}  // namespace lapsewick

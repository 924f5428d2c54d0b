#include "lapsewick/backgrounds.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lapsewick {

namespace {

constexpr double pi = std::numbers::pi;

void require_interior_theta(double theta) {
  if (!(theta > 0.0 && theta < pi))
    throw std::domain_error("theta must lie strictly inside (0, pi)");
}

/// sin(w rho) / (w sinh rho), stable near rho = 0 and w = 0.
cplx sinc_ratio(double w, cplx rho) {
  cplx num = (std::abs(w * rho) < 1e-8)
                 ? rho * (1.0 - w * w * rho * rho / 6.0)
                 : std::sin(w * rho) / w;
  cplx den = (std::abs(rho) < 1e-8) ? rho * (1.0 + rho * rho / 6.0)
                                    : std::sinh(rho);
  return num / den;
}

/// Conical Legendre function P_{-1/2 + i w}(cosh rho) for complex rho with
/// Re rho >= 0, via the cosine integral representation with the endpoint
/// square-root singularity removed by u = 1 - v^2.
cplx conical_p(double w, cplx rho) {
  if (std::abs(rho) < 1e-10) return 1.0;
  auto integrand = [&](double v) -> cplx {
    double u = 1.0 - v * v;
    cplx t = rho * u;
    cplx rad = 2.0 * std::cosh(rho) - 2.0 * std::cosh(t);
    // rad = rho^2 (1 - u^2)(1 + ...) vanishes like v^2 at v = 0.
    cplx root = std::sqrt(rad);
    return std::cos(w * t) * 2.0 * v / root;
  };
  using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto re = gk::integrate([&](double v) { return integrand(v).real(); }, 0.0,
                          1.0, 12, 1e-10);
  auto im = gk::integrate([&](double v) { return integrand(v).imag(); }, 0.0,
                          1.0, 12, 1e-10);
  return (2.0 / pi) * rho * cplx(re, im);
}

}  // namespace

cplx minkowski_propagator(const MomentumPoint& pt, double theta) {
  require_interior_theta(theta);
  const cplx ph = std::polar(1.0, -theta);
  cplx g = cplx(0.0, 1.0) * ph /
           (pt.p0 * pt.p0 - ph * ph * (pt.p_sq() + pt.m * pt.m));
#ifndef NDEBUG
  double euc = 1.0 / (pt.p_euclid_sq() + pt.m * pt.m);
  assert(std::abs(g) >= euc * (1.0 - 1e-12));
  assert(std::abs(g) <= euc / std::sin(theta) * (1.0 + 1e-12));
#endif
  return g;
}

AdmTriple friedmann_triple(const std::function<double(double)>& lapse_of_t,
                           const std::function<double(double)>& scale_of_t,
                           const Grid& g, Signature sig) {
  const int d = g.dim();
  AdmTriple out(g, sig);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Point p = g.point(i);
    double n = lapse_of_t(p.t);
    double a = scale_of_t(p.t);
    if (!(n > 0.0) || !(a > 0.0))
      throw std::domain_error("friedmann_triple: nonpositive lapse or scale");
    out.lapse(i) = n;
    out.shift(i) = CVec::Zero(d);
    out.gamma(i) = (a * a) * CMat::Identity(d, d);
  }
  return out;
}

cplx ds_embedding_distance(double t, const Vec& x, double tp, const Vec& xp,
                           double H, double theta) {
  cplx phase = std::polar(1.0, 2.0 * theta);
  double sep = (x - xp).squaredNorm();
  return std::cosh(H * (t - tp)) -
         0.5 * H * H * phase * std::exp((t + tp) * H) * sep;
}

cplx ds_heat_kernel(const DeSitterParams& par, double t, const Vec& x,
                    double tp, const Vec& xp) {
  require_interior_theta(par.theta);
  if (par.d != 1 && par.d != 2)
    throw std::domain_error("ds_heat_kernel: d must be 1 or 2");
  if (!(par.H > 0.0) || !(par.s > 0.0))
    throw std::domain_error("ds_heat_kernel: H and s must be positive");

  const double H = par.H, s = par.s, theta = par.theta;
  const int d = par.d;
  cplx xi = ds_embedding_distance(t, x, tp, xp, H, theta);
  if (xi.real() <= 1.0 && std::abs(xi.imag()) < 1e-14)
    throw std::domain_error("ds_heat_kernel: separation on the branch cut");
  cplx rho = std::acosh(xi);

  const cplx iexp = cplx(0.0, 1.0) * std::polar(1.0, theta);  // i e^{i theta}
  const double decay = s * std::sin(theta) * H * H;
  // Gaussian tail bound: |integrand| <= C e^{-decay w^2 + |Im rho| w}.
  const double b = std::abs(rho.imag());
  const double logtol = 40.0;
  double wmax = (b + std::sqrt(b * b + 4.0 * decay * logtol)) / (2.0 * decay);
  wmax = std::max(wmax, 10.0);

  auto spectral = [&](double w) -> cplx {
    cplx boltz = std::exp(s * iexp * H * H * (0.25 * d * d + w * w));
    if (d == 2) {
      double c = w * w / (8.0 * pi * pi * pi);
      return c * boltz * 4.0 * pi * sinc_ratio(w, rho);
    }
    double c = w * std::tanh(pi * w) / (4.0 * pi * pi);
    return c * boltz * 2.0 * pi * conical_p(w, rho);
  };

  using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err_re = 0.0, err_im = 0.0;
  double re = gk::integrate([&](double w) { return spectral(w).real(); }, 0.0,
                            wmax, 14, 1e-9, &err_re);
  double im = gk::integrate([&](double w) { return spectral(w).imag(); }, 0.0,
                            wmax, 14, 1e-9, &err_im);
  cplx integral(re, im);
  double scale = std::abs(integral);
  if (scale > 0.0 && (err_re + err_im) > 1e-8 * scale + 1e-300)
    throw std::runtime_error(
        "ds_heat_kernel: quadrature tolerance 1e-8 not met, error " +
        std::to_string(err_re + err_im) + " on magnitude " +
        std::to_string(scale));

  cplx front = std::pow(cplx(0.0, -1.0) * std::polar(1.0, theta),
                        static_cast<double>(d)) *
               std::pow(H, d + 1);
  return front * integral;
}

}  // namespace lapsewick

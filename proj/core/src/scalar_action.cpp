#include "lapsewick/scalar_action.hpp"

#include <cmath>
#include <stdexcept>

#include "lapsewick/wick.hpp"

namespace lapsewick {

Potential zero_potential() {
  return {[](double) { return 0.0; }, [](double) { return 0.0; }};
}

Potential quadratic_potential(double m2) {
  return {[m2](double p) { return 0.5 * m2 * p * p; },
          [m2](double) { return m2; }};
}

Potential quartic_potential(double m2, double lambda) {
  return {[m2, lambda](double p) {
            return 0.5 * m2 * p * p + 0.25 * lambda * p * p * p * p;
          },
          [m2, lambda](double p) { return m2 + 3.0 * lambda * p * p; }};
}

cplx evaluate_action(const AdmTriple& triple, const Field<double>& phi,
                     const Potential& U) {
  if (!(phi.grid == triple.grid()))
    throw std::invalid_argument("evaluate_action: grid mismatch");
  if (!triple.on_grid_nodes())
    throw std::invalid_argument("evaluate_action: triple not on grid nodes");
  const Grid& g = triple.grid();
  const int d = g.dim();
  const double eps = sig_value(triple.signature());

  Field<double> dphi_t = central_diff(phi, 0);
  std::vector<Field<double>> dphi_x;
  for (int a = 0; a < d; ++a) dphi_x.push_back(central_diff(phi, a + 1));

  cplx sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double u = U.value(phi[i]);
    if (u < 0.0)
      throw std::domain_error(
          "evaluate_action: potential negative on sampled range");
    cplx lapse = triple.lapse(i);
    const CVec& shift = triple.shift(i);
    const CMat& gamma = triple.gamma(i);
    cplx e0 = dphi_t[i];
    for (int a = 0; a < d; ++a) e0 -= shift[a] * dphi_x[a][i];
    CMat gi = gamma.inverse();
    cplx grad2 = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        grad2 += dphi_x[a][i] * gi(a, b) * dphi_x[b][i];
    cplx dens = e0 * e0 / (2.0 * lapse) + 0.5 * eps * lapse * grad2 +
                eps * lapse * u;
    sum += std::sqrt(gamma.determinant()) * dens;
  }
  return sum * g.cell_volume();
}

Field<double> energy_momentum_bitransversal(const AdmTriple& triple,
                                            const Field<double>& phi,
                                            const Potential& U) {
  if (triple.rotated())
    throw std::invalid_argument(
        "energy_momentum_bitransversal: rotated triple");
  const Grid& g = triple.grid();
  const int d = g.dim();
  const double eps = sig_value(triple.signature());

  Field<double> dphi_t = central_diff(phi, 0);
  std::vector<Field<double>> dphi_x;
  for (int a = 0; a < d; ++a) dphi_x.push_back(central_diff(phi, a + 1));

  Field<double> out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double lapse = triple.lapse(i).real();
    double e0 = dphi_t[i];
    for (int a = 0; a < d; ++a) e0 -= triple.shift(i)[a].real() * dphi_x[a][i];
    Mat gi = triple.gamma(i).real().inverse();
    double grad2 = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        grad2 += dphi_x[a][i] * gi(a, b) * dphi_x[b][i];
    out[i] = e0 * e0 / (2.0 * lapse * lapse) - 0.5 * eps * grad2 -
             eps * U.value(phi[i]);
  }
  return out;
}

ChartSample chart_sample(const Background& bg, const ScalarFn& phi,
                         const DiffeoMap& map, const Point& base, double h,
                         const ScalarGradFn* analytic) {
  if (!map.has_inverse())
    throw std::invalid_argument("chart_sample: map has no inverse");
  const int d = static_cast<int>(base.x.size());
  ChartSample s;
  s.tv = transform_background_at(bg, map, base, nullptr);
  Point image = map.map(base);
  s.phi = phi(base.t, base.x);

  StVecR grad = StVecR::Zero(d + 1);
  if (analytic) {
    // Exact chain rule: d'_mu phi' = (dy^nu / dy'^mu) d_nu phi at base.
    JacobianBlocks inv = invert_jacobian_blocks(map.jacobian(base));
    StVecR g0 = (*analytic)(base.t, base.x);
    grad[0] = inv.dt_dt * g0[0];
    for (int e = 0; e < d; ++e) grad[0] += inv.dx_dt[e] * g0[e + 1];
    for (int b = 0; b < d; ++b) {
      grad[b + 1] = inv.dt_dx[b] * g0[0];
      for (int e = 0; e < d; ++e) grad[b + 1] += inv.dx_dx(e, b) * g0[e + 1];
    }
  } else {
    auto phi_prime = [&](const Point& z) {
      Point back = map.inverse().map(z);
      return phi(back.t, back.x);
    };
    for (int mu = 0; mu <= d; ++mu) {
      Point zp = image, zm = image;
      if (mu == 0) {
        zp.t += h;
        zm.t -= h;
      } else {
        zp.x[mu - 1] += h;
        zm.x[mu - 1] -= h;
      }
      grad[mu] = (phi_prime(zp) - phi_prime(zm)) / (2.0 * h);
    }
  }
  s.dphi.resize(d);
  for (int a = 0; a < d; ++a) s.dphi[a] = grad[a + 1];
  s.e0 = grad[0];
  for (int a = 0; a < d; ++a) s.e0 -= s.tv.shift[a] * s.dphi[a];
  return s;
}

namespace {

cplx frame_gradient_sq(const ChartSample& s) {
  CMat gi = s.tv.gamma.inverse();
  cplx grad2 = 0.0;
  const int d = static_cast<int>(s.dphi.size());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) grad2 += s.dphi[a] * gi(a, b) * s.dphi[b];
  return grad2;
}

}  // namespace

TwoChartReport gradient_combination_transform(const Background& bg,
                                              const ScalarFn& phi,
                                              const DiffeoMap& map,
                                              const Grid& g, double h,
                                              GradientCombination mode,
                                              const ScalarGradFn* analytic) {
  const int d = g.dim();
  const double eps = sig_value(bg.sig);
  DiffeoMap id = identity_map(d);
  TwoChartReport rep;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Point base = g.point(i);
    ChartSample fid = chart_sample(bg, phi, id, base, h, analytic);
    ChartSample pr = chart_sample(bg, phi, map, base, h, analytic);
    cplx t2f = fid.e0 * fid.e0 / (fid.tv.lapse * fid.tv.lapse);
    cplx t2p = pr.e0 * pr.e0 / (pr.tv.lapse * pr.tv.lapse);
    cplx g2f = frame_gradient_sq(fid);
    cplx g2p = frame_gradient_sq(pr);
    if (mode == GradientCombination::Sum) {
      rep.max_residual =
          std::max(rep.max_residual, std::abs((t2p + eps * g2p) - (t2f + eps * g2f)));
      continue;
    }
    // Closed-form image of the sign-flipped combination, built from the
    // fiducial data and the Jacobian shorthands at the base point.
    JacobianBlocks fwd = map.jacobian(base);
    TransformShorthands sh =
        transform_shorthands(fid.tv, eps * fid.tv.lapse * fid.tv.lapse, fwd);
    CMat gi = fid.tv.gamma.inverse();
    cplx mix = 0.0;
    for (int c = 0; c < d; ++c)
      for (int e = 0; e < d; ++e)
        mix += fwd.dt_dx[c] * gi(c, e) * fid.dphi[e];
    cplx bracket = sh.C / fid.tv.lapse * fid.e0 + eps * fid.tv.lapse * mix;
    cplx quad = 0.0;
    for (int c = 0; c < d; ++c)
      for (int e = 0; e < d; ++e)
        quad += gi(c, e) * (sh.C * fid.dphi[c] - fwd.dt_dx[c] * fid.e0) *
                (sh.C * fid.dphi[e] - fwd.dt_dx[e] * fid.e0);
    cplx rhs = (bracket * bracket - eps * quad) / sh.radicand;
    rep.max_residual =
        std::max(rep.max_residual, std::abs((t2p - eps * g2p) - rhs));
    rep.min_rhs_real = std::min(rep.min_rhs_real, rhs.real());
  }
  return rep;
}

LagrangianScalarReport lagrangian_scalar_residual(const Background& bg,
                                                  const ScalarFn& phi,
                                                  const Potential& U,
                                                  const DiffeoMap& map,
                                                  double theta, const Grid& g,
                                                  double h) {
  const int d = g.dim();
  DiffeoMap id = identity_map(d);
  const cplx phase = std::polar(1.0, -theta);

  Background bg_theta = bg;
  auto lapse0 = bg.lapse;
  bg_theta.lapse = [lapse0, phase](double t, const Vec& x) {
    return phase * lapse0(t, x);
  };
  bg_theta.sig = Signature::Lorentzian;
  bg_theta.theta = theta;
  Background bg_minus = bg;
  bg_minus.sig = Signature::Lorentzian;
  Background bg_plus = bg;
  bg_plus.sig = Signature::Euclidean;

  auto density = [](const ChartSample& s, double u, double sign_t) {
    return sign_t * s.e0 * s.e0 / (2.0 * s.tv.lapse * s.tv.lapse) -
           sign_t * 0.5 * frame_gradient_sq(s) - sign_t * u;
  };

  LagrangianScalarReport rep;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Point base = g.point(i);
    double u = U.value(phi(base.t, base.x));
    ChartSample f = chart_sample(bg_theta, phi, id, base, h);
    ChartSample p = chart_sample(bg_theta, phi, map, base, h);
    // -L(phi, g_theta): chart independent.
    cplx lf = density(f, u, +1.0);
    cplx lp = density(p, u, +1.0);
    rep.scalar_residual = std::max(rep.scalar_residual, std::abs(lf - lp));

    // Split of e^{-i theta} (-L(g_theta)) into the matching-signature parts.
    ChartSample pm = chart_sample(bg_minus, phi, map, base, h);
    ChartSample pp = chart_sample(bg_plus, phi, map, base, h);
    cplx l_minus = -density(pm, u, +1.0);  // L(phi', g'_-)
    cplx l_plus =
        pp.e0 * pp.e0 / (2.0 * pp.tv.lapse * pp.tv.lapse) +
        0.5 * frame_gradient_sq(pp) + u;  // L(phi', g'_+)
    cplx lhs = phase * lp;
    cplx rhs = -std::cos(theta) * l_minus + cplx(0.0, 1.0) * std::sin(theta) * l_plus;
    rep.decomposition_residual =
        std::max(rep.decomposition_residual, std::abs(lhs - rhs));
  }
  return rep;
}

}  // namespace lapsewick

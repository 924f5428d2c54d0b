#include "lapsewick/wick.hpp"

#include <cmath>
#include <numbers>

namespace lapsewick {

namespace {

bool on_closed_negative_axis(cplx z) {
  const double scale = std::max(1.0, std::abs(z));
  return z.real() <= 0.0 && std::abs(z.imag()) <= 1e-12 * scale;
}

void check_theta_homotopy(cplx C2, cplx N0sq_q, double theta,
                          std::size_t sample) {
  // radicand(theta') = C^2 - e^{-2 i theta'} N_0^2 q along the homotopy
  // from the Euclidean point theta' = pi/2 down to the target angle.
  const double th_hi = std::numbers::pi / 2.0;
  const int steps = 64;
  for (int k = 0; k <= steps; ++k) {
    double th = theta + (th_hi - theta) * k / steps;
    cplx rad = C2 - std::polar(1.0, -2.0 * th) * N0sq_q;
    if (on_closed_negative_axis(rad))
      throw BranchCutError(
          "transform_triple: branch cut crossed along theta homotopy at sample " +
          std::to_string(sample));
  }
}

}  // namespace

TransformShorthands transform_shorthands(const TripleValue& tv, cplx epsN2,
                                         const JacobianBlocks& fwd) {
  const int d = static_cast<int>(tv.shift.size());
  TransformShorthands sh;
  sh.C = fwd.dt_dt;
  for (int c = 0; c < d; ++c) sh.C -= fwd.dt_dx[c] * tv.shift[c];
  CMat gi = tv.gamma.inverse();
  cplx q = 0.0;
  for (int c = 0; c < d; ++c)
    for (int e = 0; e < d; ++e) q += fwd.dt_dx[c] * gi(c, e) * fwd.dt_dx[e];
  sh.radicand = sh.C * sh.C + epsN2 * q;
  sh.D = std::sqrt(sh.radicand);
  sh.X.resize(d, d);
  for (int a = 0; a < d; ++a) {
    cplx adv = fwd.dx_dt[a];
    for (int e = 0; e < d; ++e) adv -= fwd.dx_dx(a, e) * tv.shift[e];
    for (int b = 0; b < d; ++b)
      sh.X(a, b) = fwd.dx_dx(a, b) - fwd.dt_dx[b] * adv / sh.C;
  }
  return sh;
}

TripleValue transform_value(const TripleValue& tv, cplx epsN2,
                            const JacobianBlocks& fwd,
                            const JacobianBlocks& inv) {
  const int d = static_cast<int>(tv.shift.size());
  TransformShorthands sh = transform_shorthands(tv, epsN2, fwd);
  if (std::abs(sh.radicand) <= 1e-10)
    throw DegenerateLeafError("transform_value: degenerate leaf, |D^2| <= 1e-10");
  if (on_closed_negative_axis(sh.radicand))
    throw BranchCutError("transform_value: radicand on closed negative real axis");

  CMat gi = tv.gamma.inverse();
  TripleValue out;
  out.lapse = tv.lapse / sh.D;

  // N'^a = -[ (dx'/dt - dx'/dx N) C + eps N^2 dx'/dx gamma^{-1} dt'/dx ] / D^2
  CVec gidt(d);
  for (int c = 0; c < d; ++c) {
    gidt[c] = 0.0;
    for (int e = 0; e < d; ++e) gidt[c] += gi(c, e) * fwd.dt_dx[e];
  }
  out.shift.resize(d);
  for (int a = 0; a < d; ++a) {
    cplx adv = fwd.dx_dt[a];
    for (int e = 0; e < d; ++e) adv -= fwd.dx_dx(a, e) * tv.shift[e];
    cplx grad = 0.0;
    for (int e = 0; e < d; ++e) grad += fwd.dx_dx(a, e) * gidt[e];
    out.shift[a] = -(adv * sh.C + epsN2 * grad) / sh.radicand;
  }

  // gamma'_ab = E^T gamma E + eps N^2 T T^T with E_{c a} = Y^c_a + T_a N^c.
  CMat E(d, d);
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      E(c, a) = inv.dx_dx(c, a) + inv.dt_dx[a] * tv.shift[c];
  out.gamma.resize(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      cplx s = 0.0;
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) s += E(c, a) * E(e, b) * tv.gamma(c, e);
      out.gamma(a, b) = s + epsN2 * inv.dt_dx[a] * inv.dt_dx[b];
    }
  return out;
}

AdmTriple wick_rotate_fiducial(const AdmTriple& triple, double theta) {
  if (triple.rotated())
    throw std::domain_error("wick_rotate_fiducial: triple already rotated");
  if (theta < 0.0 || theta >= std::numbers::pi)
    throw std::domain_error("wick_rotate_fiducial: theta must lie in [0, pi)");
  triple.validate();
  AdmTriple out = triple;
  const cplx phase = std::polar(1.0, -theta);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.lapse(i) = phase * out.lapse(i).real();
  // Signature-(-1) representation of the rotated line element.
  out.set_signature(Signature::Lorentzian);
  out.set_rotation(theta);
  return out;
}

AdmTriple transform_triple(const AdmTriple& triple, const DiffeoMap& map) {
  if (map.dim() != triple.grid().dim())
    throw std::invalid_argument("transform_triple: dimension mismatch");
  AdmTriple out = triple;
  out.mark_off_grid();
  for (std::size_t i = 0; i < triple.size(); ++i) {
    const Point& p = triple.point(i);
    JacobianBlocks fwd = map.jacobian(p);
    if (fwd.full().determinant() <= 0.0)
      throw std::domain_error(
          "transform_triple: orientation-reversing Jacobian at sample " +
          std::to_string(i));
    JacobianBlocks inv = invert_jacobian_blocks(fwd);
    TripleValue tv = triple.value(i);
    cplx epsN2 = sig_value(triple.signature()) * tv.lapse * tv.lapse;
    if (triple.rotated()) {
      // Fiducial-rotated triples have N_theta = e^{-i theta} N_0; track the
      // radicand from the Euclidean point to catch branch crossings.
      TransformShorthands sh = transform_shorthands(tv, epsN2, fwd);
      double n0 = std::abs(tv.lapse);
      check_theta_homotopy(sh.C * sh.C,
                           (sh.radicand - sh.C * sh.C) /
                               (sig_value(triple.signature()) * tv.lapse *
                                tv.lapse) * n0 * n0,
                           *triple.rotation(), i);
    }
    try {
      out.set_value(i, transform_value(tv, epsN2, fwd, inv));
    } catch (const DegenerateLeafError& e) {
      throw DegenerateLeafError(std::string(e.what()) + " at sample " +
                                std::to_string(i));
    }
    out.point(i) = map.map(p);
  }
  return out;
}

TripleValue transform_background_at(const Background& bg, const DiffeoMap& map,
                                    const Point& base, Point* image) {
  TripleValue tv = bg.at(base.t, base.x);
  JacobianBlocks fwd = map.jacobian(base);
  JacobianBlocks inv = invert_jacobian_blocks(fwd);
  cplx epsN2 = sig_value(bg.sig) * tv.lapse * tv.lapse;
  if (image) *image = map.map(base);
  return transform_value(tv, epsN2, fwd, inv);
}

AdmTriple wick_flip_fiducial(const AdmTriple& triple, FlipDirection dir) {
  for (std::size_t i = 0; i < triple.size(); ++i)
    if (std::abs(triple.lapse(i).imag()) > 1e-8)
      throw std::domain_error("wick_flip_fiducial: lapse not real");
  AdmTriple out = triple;
  out.set_rotation(std::nullopt);
  // w_{pi/2} projects onto Euclidean triples, w_0 onto Lorentzian ones;
  // both act trivially on matching-signature inputs.
  out.set_signature(dir == FlipDirection::LorentzianToEuclidean
                        ? Signature::Euclidean
                        : Signature::Lorentzian);
  return out;
}

AdmTriple wick_flip_nonfiducial(const AdmTriple& triple, const DiffeoMap& map,
                                FlipDirection dir) {
  if (!map.has_inverse())
    throw std::domain_error("wick_flip_nonfiducial: inverse map unavailable");
  AdmTriple pulled = transform_triple(triple, map.inverse());
  double imag = 0.0;
  for (std::size_t i = 0; i < pulled.size(); ++i) {
    imag = std::max(imag, std::abs(pulled.lapse(i).imag()));
    imag = std::max(imag, pulled.shift(i).imag().cwiseAbs().maxCoeff());
    imag = std::max(imag, pulled.gamma(i).imag().cwiseAbs().maxCoeff());
  }
  if (imag > 1e-8)
    throw std::domain_error(
        "wick_flip_nonfiducial: pullback is not a real fiducial triple");
  for (std::size_t i = 0; i < pulled.size(); ++i) {
    pulled.lapse(i) = pulled.lapse(i).real();
    pulled.shift(i) = pulled.shift(i).real().template cast<cplx>();
    pulled.gamma(i) = pulled.gamma(i).real().template cast<cplx>();
  }
  AdmTriple flipped = wick_flip_fiducial(pulled, dir);
  return transform_triple(flipped, map);
}

}  // namespace lapsewick

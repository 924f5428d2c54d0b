#pragma once

#include <functional>

#include "lapsewick/adm_triple.hpp"

namespace lapsewick {

struct MomentumPoint {
  double p0 = 0.0;
  Vec p;
  double m = 0.0;

  double p_sq() const { return p.squaredNorm(); }
  double p_euclid_sq() const { return p0 * p0 + p_sq(); }
};

/// Momentum-space Green's function of the rotated flat-space operator:
///   G_theta = i e^{-i theta} / (p0^2 - e^{-2 i theta}(p^2 + m^2)),
/// pole-free for theta in (0, pi). In debug builds the two-sided bound
/// 1/(pE^2+m^2) <= |G| <= (1/sin theta)/(pE^2+m^2) is asserted.
cplx minkowski_propagator(const MomentumPoint& pt, double theta);

/// Spatially flat cosmological triple (N(t), 0, a(t)^2 delta_ab).
/// Throws std::domain_error if N or a is nonpositive on the time range.
AdmTriple friedmann_triple(const std::function<double(double)>& lapse_of_t,
                           const std::function<double(double)>& scale_of_t,
                           const Grid& g, Signature sig);

/// Rotated de Sitter two-point invariant
///   cosh H(t-t') - (H^2/2) e^{2 i theta} e^{(t+t')H} |x-x'|^2.
cplx ds_embedding_distance(double t, const Vec& x, double tp, const Vec& xp,
                           double H, double theta);

struct DeSitterParams {
  double H = 1.0;
  int d = 2;       // spatial dimension, 1 or 2
  double theta = 1.5707963267948966;
  double s = 0.1;  // diffusion time
};

/// Rotated heat kernel on the flat de Sitter slicing,
///   (-i e^{i theta})^d H^{d+1} int_0^inf dw c(w)
///       e^{s i e^{i theta} H^2 [d^2/4 + w^2]} Omega_w(d_theta),
/// by adaptive Gauss-Kronrod quadrature truncated where the Gaussian
/// factor certifies a < 1e-10 relative tail. d=2 uses the elementary
/// form Omega_w = 4 pi sin(w rho)/(w sinh rho); d=1 evaluates the conical
/// Legendre function by its cosine integral representation. Throws
/// std::domain_error for theta at the boundary or unsupported d.
cplx ds_heat_kernel(const DeSitterParams& par, double t, const Vec& x,
                    double tp, const Vec& xp);

}  // namespace lapsewick

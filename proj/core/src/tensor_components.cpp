#include "lapsewick/tensor_components.hpp"

#include <cmath>

namespace lapsewick {

cplx frame_pairing(double eps, const CovectorComponents& cov,
                   const VectorComponents& vec) {
  cplx s = eps * cov.v * vec.v;
  for (int a = 0; a < cov.v_a.size(); ++a) s += cov.v_a[a] * vec.v_a[a];
  return s;
}

CovectorComponents transform_covector(const CovectorComponents& cov,
                                      const TripleValue& tv, double eps,
                                      const JacobianBlocks& fwd,
                                      const JacobianBlocks& inv) {
  const int d = static_cast<int>(tv.shift.size());
  TransformShorthands sh = transform_shorthands(tv, eps * tv.lapse * tv.lapse, fwd);
  CMat gi = tv.gamma.inverse();
  CovectorComponents out;
  cplx grad = 0.0;
  for (int c = 0; c < d; ++c)
    for (int e = 0; e < d; ++e) grad += fwd.dt_dx[c] * gi(c, e) * cov.v_a[e];
  out.v = (sh.C * cov.v + eps * tv.lapse * grad) / sh.D;
  out.v_a.resize(d);
  for (int a = 0; a < d; ++a) {
    cplx s = tv.lapse * inv.dt_dx[a] * cov.v;
    for (int b = 0; b < d; ++b)
      s += (inv.dx_dx(b, a) + inv.dt_dx[a] * tv.shift[b]) * cov.v_a[b];
    out.v_a[a] = s;
  }
  return out;
}

VectorComponents transform_vector(const VectorComponents& vec,
                                  const TripleValue& tv, double eps,
                                  const JacobianBlocks& fwd,
                                  const JacobianBlocks&) {
  const int d = static_cast<int>(tv.shift.size());
  TransformShorthands sh = transform_shorthands(tv, eps * tv.lapse * tv.lapse, fwd);
  CMat gi = tv.gamma.inverse();
  cplx contr = 0.0;
  for (int a = 0; a < d; ++a) contr += fwd.dt_dx[a] * vec.v_a[a];
  cplx num = sh.C * vec.v + eps * tv.lapse * contr;
  VectorComponents out;
  out.v = num / sh.D;
  CVec gidt(d);
  for (int b = 0; b < d; ++b) {
    gidt[b] = 0.0;
    for (int c = 0; c < d; ++c) gidt[b] += gi(b, c) * fwd.dt_dx[c];
  }
  out.v_a.resize(d);
  for (int a = 0; a < d; ++a) {
    cplx s = 0.0;
    for (int b = 0; b < d; ++b)
      s += sh.X(a, b) * (vec.v_a[b] - gidt[b] * tv.lapse * num / sh.radicand);
    out.v_a[a] = s;
  }
  return out;
}

StVec covector_spacetime(const CovectorComponents& cov, const TripleValue& tv) {
  const int d = static_cast<int>(tv.shift.size());
  StVec w(d + 1);
  w[0] = cov.v * tv.lapse;
  for (int a = 0; a < d; ++a) w[0] += cov.v_a[a] * tv.shift[a];
  for (int a = 0; a < d; ++a) w[a + 1] = cov.v_a[a];
  return w;
}

StVec vector_spacetime(const VectorComponents& vec, const TripleValue& tv,
                       double eps) {
  const int d = static_cast<int>(tv.shift.size());
  StVec u(d + 1);
  u[0] = eps * vec.v / tv.lapse;
  for (int a = 0; a < d; ++a) u[a + 1] = vec.v_a[a] - u[0] * tv.shift[a];
  return u;
}

CovectorComponents rank_one_covector(const TripleValue& tv, double eps,
                                     const JacobianBlocks& fwd,
                                     const JacobianBlocks& inv) {
  CovectorComponents unit{1.0, CVec::Zero(tv.shift.size())};
  return transform_covector(unit, tv, eps, fwd, inv);
}

VectorComponents rank_one_vector(const TripleValue& tv, double eps,
                                 const JacobianBlocks& fwd,
                                 const JacobianBlocks& inv) {
  VectorComponents unit{1.0, CVec::Zero(tv.shift.size())};
  return transform_vector(unit, tv, eps, fwd, inv);
}

namespace {

Signature sig_of(double eps) {
  return eps < 0 ? Signature::Lorentzian : Signature::Euclidean;
}

TripleValue rotate_value(const TripleValue& tv, double theta) {
  return {std::polar(1.0, -theta) * tv.lapse, tv.shift, tv.gamma};
}

}  // namespace

double rank_one_metric_residual(const TripleValue& unrotated, double eps,
                                double theta, const JacobianBlocks& fwd,
                                const JacobianBlocks& inv) {
  const int d = static_cast<int>(unrotated.shift.size());
  TripleValue tvp =
      transform_value(unrotated, eps * unrotated.lapse * unrotated.lapse, fwd, inv);
  TripleValue rot = rotate_value(unrotated, theta);
  TripleValue rotp = transform_value(rot, -rot.lapse * rot.lapse, fwd, inv);
  StMat g_theta = metric_value(rotp, Signature::Lorentzian);
  StMat g_eps = metric_value(tvp, sig_of(eps));
  StVec w = covector_spacetime(rank_one_covector(unrotated, eps, fwd, inv), tvp);
  cplx coef = eps + std::polar(1.0, -2.0 * theta);
  double res = 0.0;
  for (int m = 0; m <= d; ++m)
    for (int n = 0; n <= d; ++n)
      res = std::max(res,
                     std::abs(g_theta(m, n) - g_eps(m, n) + coef * w[m] * w[n]));
  return res;
}

double rank_one_inverse_residual(const TripleValue& unrotated, double eps,
                                 double theta, const JacobianBlocks& fwd,
                                 const JacobianBlocks& inv) {
  const int d = static_cast<int>(unrotated.shift.size());
  TripleValue tvp =
      transform_value(unrotated, eps * unrotated.lapse * unrotated.lapse, fwd, inv);
  TripleValue rot = rotate_value(unrotated, theta);
  TripleValue rotp = transform_value(rot, -rot.lapse * rot.lapse, fwd, inv);
  StMat gi_theta = inverse_metric_value(rotp, Signature::Lorentzian);
  StMat gi_eps = inverse_metric_value(tvp, sig_of(eps));
  StVec u = vector_spacetime(rank_one_vector(unrotated, eps, fwd, inv), tvp, eps);
  cplx coef = eps + std::polar(1.0, 2.0 * theta);
  double res = 0.0;
  for (int m = 0; m <= d; ++m)
    for (int n = 0; n <= d; ++n)
      res = std::max(
          res, std::abs(gi_theta(m, n) - gi_eps(m, n) + coef * u[m] * u[n]));
  return res;
}

StMat frame_gram(double eps, double theta, const StVecR& eps_I) {
  const int n = static_cast<int>(eps_I.size());
  cplx coef = eps + std::polar(1.0, -2.0 * theta);
  StMat gram = StMat::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram(i, j) -= coef * eps_I[i] * eps_I[j];
  return gram;
}

}  // namespace lapsewick

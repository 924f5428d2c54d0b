#include "lapsewick/metric.hpp"

#include <stdexcept>

namespace lapsewick {

namespace {

cplx det_small(const CMat& m) {
  const int d = static_cast<int>(m.rows());
  if (d == 1) return m(0, 0);
  if (d == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

}  // namespace

StMat metric_value(const TripleValue& tv, Signature sig) {
  const int d = static_cast<int>(tv.shift.size());
  const cplx eps(sig_value(sig));
  StMat g(d + 1, d + 1);
  CVec gN = tv.gamma * tv.shift;  // gamma_ab N^b
  // Unconjugated bilinear contraction N^a gamma_ab N^b.
  g(0, 0) = eps * tv.lapse * tv.lapse;
  for (int a = 0; a < d; ++a) g(0, 0) += tv.shift[a] * gN[a];
  for (int a = 0; a < d; ++a) {
    g(0, 1 + a) = g(1 + a, 0) = gN[a];
    for (int b = 0; b < d; ++b) g(1 + a, 1 + b) = tv.gamma(a, b);
  }
  return g;
}

StMat inverse_metric_value(const TripleValue& tv, Signature sig) {
  const int d = static_cast<int>(tv.shift.size());
  const cplx eps(sig_value(sig));
  cplx detg = det_small(tv.gamma);
  if (std::abs(detg) < 1e-300)
    throw std::domain_error("inverse_metric_value: degenerate spatial metric");
  CMat gi = tv.gamma.inverse();
  const cplx n2 = tv.lapse * tv.lapse;
  StMat G(d + 1, d + 1);
  G(0, 0) = eps / n2;
  for (int a = 0; a < d; ++a) {
    G(0, 1 + a) = G(1 + a, 0) = -eps * tv.shift[a] / n2;
    for (int b = 0; b < d; ++b)
      G(1 + a, 1 + b) = gi(a, b) + eps * tv.shift[a] * tv.shift[b] / n2;
  }
  return G;
}

ComplexMetricField reconstruct_metric(const AdmTriple& triple) {
  ComplexMetricField out;
  const std::size_t n = triple.size();
  out.g.reserve(n);
  out.ginv.reserve(n);
  out.det.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    TripleValue tv = triple.value(i);
    cplx detg = det_small(tv.gamma);
    if (std::abs(detg) < 1e-14)
      throw std::domain_error("reconstruct_metric: degenerate spatial metric at sample " +
                              std::to_string(i));
    out.g.push_back(metric_value(tv, triple.signature()));
    out.ginv.push_back(inverse_metric_value(tv, triple.signature()));
    out.det.push_back(sig_value(triple.signature()) * tv.lapse * tv.lapse *
                      detg);
  }
  return out;
}

double inverse_consistency_residual(const ComplexMetricField& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < m.g.size(); ++i) {
    const int n = static_cast<int>(m.g[i].rows());
    StMat p = m.g[i] * m.ginv[i] - StMat::Identity(n, n);
    r = std::max(r, p.cwiseAbs().maxCoeff());
  }
  return r;
}

}  // namespace lapsewick

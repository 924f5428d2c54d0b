#pragma once

#include <vector>

#include "lapsewick/adm_triple.hpp"

namespace lapsewick {

/// Full (1+d) x (1+d) complex symmetric metric and inverse per sample point.
struct ComplexMetricField {
  std::vector<StMat> g;
  std::vector<StMat> ginv;
  std::vector<cplx> det;
};

/// Metric and inverse at one point. The inverse comes from the block form
/// eps N^{-2} m m + gamma^{ab} e_a e_b, not from dense inversion.
StMat metric_value(const TripleValue& tv, Signature sig);
StMat inverse_metric_value(const TripleValue& tv, Signature sig);

/// Reconstructs g_{mu nu}, its inverse, and det g = eps N^2 det gamma at
/// every sample point. Throws std::domain_error on a singular spatial
/// metric.
ComplexMetricField reconstruct_metric(const AdmTriple& triple);

/// max over points of |g.ginv - id| (consistency diagnostic).
double inverse_consistency_residual(const ComplexMetricField& m);

}  // namespace lapsewick

#pragma once

#include <string>
#include <vector>

#include "lapsewick/hessian.hpp"

namespace lapsewick {

/// Full spectrum of the rotated fluctuation operator with the wedge
/// statistics. wedge_margin = min over non-origin eigenvalues of
/// |Arg lambda| - (pi/2 + min(theta, pi - theta)); violations counts
/// eigenvalues with margin < -1e-10; near-zero eigenvalues
/// (|lambda| < 1e-12) are excluded from Arg statistics.
struct SpectralReport {
  double theta = 0.0;
  double wedge_margin = 0.0;
  std::vector<cplx> eigenvalues;
  int violations = 0;
  int origin_count = 0;
};

/// Dense nonsymmetric complex eigensolve (LAPACK zgeev). Throws
/// std::runtime_error with the failing index on non-convergence.
std::vector<cplx> dense_eigenvalues(const Eigen::MatrixXcd& a);

SpectralReport spectral_report(const HessianOperator& op);

/// {"theta": ..., "wedge_margin": ..., "eigenvalues": [[re, im], ...],
///  "violations": n} with eigenvalues sorted by (re, im) for stable output.
std::string to_json(const SpectralReport& rep);

}  // namespace lapsewick

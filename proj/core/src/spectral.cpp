#include "lapsewick/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lapsewick {

std::vector<cplx> dense_eigenvalues(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("dense_eigenvalues: matrix not square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::MatrixXcd work = a;  // column-major, overwritten by zgeev
  std::vector<cplx> eig(n);
  lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'N', n,
      reinterpret_cast<lapack_complex_double*>(work.data()), n,
      reinterpret_cast<lapack_complex_double*>(eig.data()), nullptr, 1,
      nullptr, 1);
  if (info != 0)
    throw std::runtime_error("dense_eigenvalues: zgeev failed, info = " +
                             std::to_string(info));
  return eig;
}

SpectralReport spectral_report(const HessianOperator& op) {
  SpectralReport rep;
  rep.theta = op.theta;
  rep.eigenvalues = dense_eigenvalues(op.dense_delta());
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
            [](const cplx& a, const cplx& b) {
              return a.real() != b.real() ? a.real() < b.real()
                                          : a.imag() < b.imag();
            });
  const double th_tilde = std::min(op.theta, std::numbers::pi - op.theta);
  const double edge = std::numbers::pi / 2.0 + th_tilde;
  double margin = std::numbers::pi;  // |Arg| <= pi, so margin <= pi/2
  for (const cplx& lam : rep.eigenvalues) {
    if (std::abs(lam) < 1e-12) {
      ++rep.origin_count;
      continue;
    }
    double m = std::abs(std::arg(lam)) - edge;
    margin = std::min(margin, m);
    if (m < -1e-10) ++rep.violations;
  }
  rep.wedge_margin = margin;
  return rep;
}

std::string to_json(const SpectralReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"theta\": " << rep.theta
     << ", \"wedge_margin\": " << rep.wedge_margin << ", \"eigenvalues\": [";
  for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
    if (i) os << ", ";
    os << '[' << rep.eigenvalues[i].real() << ", " << rep.eigenvalues[i].imag()
       << ']';
  }
  os << "], \"violations\": " << rep.violations << '}';
  return os.str();
}

}  // namespace lapsewick

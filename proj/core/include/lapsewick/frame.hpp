#pragma once

#include <vector>

#include "lapsewick/adm_triple.hpp"

namespace lapsewick {

/// Foliation frame data at one point, in adapted coordinates
/// (time component first).
struct FrameValue {
  StVec dt;     ///< dt_alpha = (1, 0, ..., 0)
  StVec m;      ///< m^alpha = (1, -N^a)
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 4> e_up;  ///< e^a_alpha
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 4> e_dn;  ///< e_a^alpha
  StMat sigma;  ///< tangential projector
  StMat tproj;  ///< transversal projector
};

struct FoliationFrame {
  std::vector<FrameValue> values;

  /// max |m^alpha dt_alpha - 1| over points.
  double duality_residual() const;
  /// max over points of |e_a^alpha e^b_alpha - delta| and
  /// |Sigma - e^a_alpha e_a^beta|.
  double completeness_residual() const;
};

FrameValue foliation_frame_value(const TripleValue& tv);
FoliationFrame foliation_frame(const AdmTriple& triple);

}  // namespace lapsewick

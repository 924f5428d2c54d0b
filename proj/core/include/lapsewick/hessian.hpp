#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "lapsewick/adm_triple.hpp"
#include "lapsewick/diffeo.hpp"
#include "lapsewick/fields.hpp"
#include "lapsewick/scalar_action.hpp"

namespace lapsewick {

/// Fluctuation operator of the complexified scalar action, kept in the
/// split form
///   D_plus  = T + S + V,   D_minus = -T + S + V,
///   Delta_theta = -sin(theta) D_plus - i cos(theta) D_minus,
/// where T and S are the temporal and spatial parts of the Laplacian with
/// flipped sign. T and S are stored as symmetric quadratic forms m_t, m_s;
/// the operators act as W^{-1} m f with weight W = N sqrt(det gamma) times
/// the cell volume, so both D_plus and D_minus are self-adjoint in the
/// weighted inner product by construction and the numerical range of
/// Delta_theta lies in the wedge |Arg| >= pi/2 + min(theta, pi - theta).
struct HessianOperator {
  Grid grid;
  double theta = 0.0;
  Eigen::VectorXd weight;
  Eigen::SparseMatrix<double> m_t;
  Eigen::SparseMatrix<double> m_s;
  Eigen::VectorXd pot;

  Eigen::VectorXcd apply_dplus(const Eigen::VectorXcd& f) const;
  Eigen::VectorXcd apply_dminus(const Eigen::VectorXcd& f) const;
  Eigen::VectorXcd apply_delta(const Eigen::VectorXcd& f) const;

  /// Dense Delta_theta for eigensolves.
  Eigen::MatrixXcd dense_delta() const;

  /// max entry of |W D - D^H W| over both signature parts.
  double self_adjoint_residual() const;
};

/// Assembles the operator from an un-rotated real triple and a pointwise
/// non-negative potential V = U''(phi). Temporal part: forward e0 pairs
/// with the density rule; spatial diagonal part: forward/backward pairs
/// with geometric-mean midpoint coefficients; spatial cross terms:
/// symmetrized central differences. Throws std::domain_error for negative
/// V or a rotated triple.
HessianOperator assemble_hessian(const AdmTriple& triple,
                                 const Field<double>& V, double theta);

/// Weighted inner product sum_i W_i conj(f_i) g_i.
cplx weighted_inner(const HessianOperator& op, const Eigen::VectorXcd& f,
                    const Eigen::VectorXcd& g);

/// max over `pairs` random unit pairs of
/// |<f, Delta_theta g> - <Delta_{pi-theta} f, g>| / (|f| |g|).
double adjoint_residual(const HessianOperator& op_theta,
                        const HessianOperator& op_reflect, int pairs,
                        unsigned seed);

/// Grid-free two-chart evaluation of Delta_theta applied to a closed-form
/// scalar: compares the fiducial-chart value at each node of `g` with the
/// image-chart value at the corresponding image point, using nested
/// central-difference stencils of step `h` on closed-form data. Returns
/// the max residual over nodes (expected O(h^2)).
double hessian_invariance_residual(const Background& bg, const ScalarFn& phi,
                                   const ScalarFn& V, const DiffeoMap& map,
                                   double theta, const Grid& g, double h);

/// Delta_theta applied to phi at the image of `base` under `map`, by
/// nested stencils in the image chart.
cplx delta_theta_at(const Background& bg, const ScalarFn& phi,
                    const ScalarFn& V, const DiffeoMap& map, double theta,
                    const Point& base, double h);

}  // namespace lapsewick

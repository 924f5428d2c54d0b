#pragma once

#include "lapsewick/adm_triple.hpp"
#include "lapsewick/diffeo.hpp"
#include "lapsewick/metric.hpp"
#include "lapsewick/wick.hpp"

namespace lapsewick {

/// Components (v, v_a) of a covector V = v N dt + v_a e^a in the
/// foliation coframe, with e^a = dx^a + N^a dt.
struct CovectorComponents {
  cplx v;
  CVec v_a;
};

/// Components (vc, vc^a) of a vector V = eps vc N^{-1} e_0 + vc^a d_a
/// in the foliation frame, with e_0 = d_t - N^a d_a.
struct VectorComponents {
  cplx v;
  CVec v_a;
};

/// Frame-invariant pairing eps v vc + v_a vc^a.
cplx frame_pairing(double eps, const CovectorComponents& cov,
                   const VectorComponents& vec);

/// Transformation of covector frame components under a foliation-changing
/// diffeomorphism with forward/inverse Jacobian blocks at the base point.
CovectorComponents transform_covector(const CovectorComponents& cov,
                                      const TripleValue& tv, double eps,
                                      const JacobianBlocks& fwd,
                                      const JacobianBlocks& inv);

/// Same for vector frame components.
VectorComponents transform_vector(const VectorComponents& vec,
                                  const TripleValue& tv, double eps,
                                  const JacobianBlocks& fwd,
                                  const JacobianBlocks& inv);

/// Spacetime components w_mu of v N dt + v_a e^a in the adapted chart of
/// the triple value supplying N^a: w_0 = v N + v_a N^a, w_b = v_b.
StVec covector_spacetime(const CovectorComponents& cov, const TripleValue& tv);

/// Spacetime components u^mu of eps vc N^{-1} e_0 + vc^a d_a:
/// u^0 = eps vc / N, u^a = vc^a - eps vc N^a / N.
StVec vector_spacetime(const VectorComponents& vec, const TripleValue& tv,
                       double eps);

/// Perturbing covector of the rank-one form of the rotated metric in the
/// image foliation: the transform of (v, v_a) = (1, 0) built from the
/// un-rotated data.
CovectorComponents rank_one_covector(const TripleValue& tv, double eps,
                                     const JacobianBlocks& fwd,
                                     const JacobianBlocks& inv);

/// Perturbing vector of the rank-one form of the inverse rotated metric:
/// the transform of (vc, vc^a) = (1, 0).
VectorComponents rank_one_vector(const TripleValue& tv, double eps,
                                 const JacobianBlocks& fwd,
                                 const JacobianBlocks& inv);

/// Residual of g'_theta = g'_eps - (eps + e^{-2 i theta}) w w^T, where
/// g'_theta is reconstructed from the transformed rotated triple and
/// g'_eps, w from the transformed un-rotated one (max abs entry).
double rank_one_metric_residual(const TripleValue& unrotated, double eps,
                                double theta, const JacobianBlocks& fwd,
                                const JacobianBlocks& inv);

/// Same for the inverse metric with coefficient (eps + e^{+2 i theta})
/// and the perturbing vector u^mu.
double rank_one_inverse_residual(const TripleValue& unrotated, double eps,
                                 double theta, const JacobianBlocks& fwd,
                                 const JacobianBlocks& inv);

/// Gram matrix of the orthonormal frame of the un-rotated metric taken in
/// the rotated one: delta_IJ - (eps + e^{-2 i theta}) eps_I eps_J, where
/// eps_I are the time components of the frame vectors.
StMat frame_gram(double eps, double theta, const StVecR& eps_I);

}  // namespace lapsewick

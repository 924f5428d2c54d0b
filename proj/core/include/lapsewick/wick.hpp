#pragma once

#include <stdexcept>

#include "lapsewick/adm_triple.hpp"
#include "lapsewick/diffeo.hpp"

namespace lapsewick {

struct DegenerateLeafError : std::domain_error {
  using std::domain_error::domain_error;
};
struct BranchCutError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Shorthands C, D_eps, X^a_b of the triple transformation law at one point.
struct TransformShorthands {
  cplx C;
  cplx D;         ///< principal square root of the radicand
  cplx radicand;  ///< C^2 + eps N^2 (dt'/dx) gamma^{-1} (dt'/dx)
  CMat X;         ///< X^a_b
};

TransformShorthands transform_shorthands(const TripleValue& tv, cplx epsN2,
                                         const JacobianBlocks& fwd);

/// Pointwise ADM triple transformation under a foliation change. `epsN2`
/// is eps_g N^2 (complex for rotated triples); the same value fixes which
/// signature branch of the formulas is used.
TripleValue transform_value(const TripleValue& tv, cplx epsN2,
                            const JacobianBlocks& fwd,
                            const JacobianBlocks& inv);

/// Fiducial lapse-Wick rotation: lapse -> e^{-i theta} N in the
/// signature-(-1) representation, shift and spatial metric unchanged.
/// Throws std::domain_error on an already-rotated input.
AdmTriple wick_rotate_fiducial(const AdmTriple& triple, double theta);

/// Finite foliation-changing transformation of a (possibly rotated) triple.
/// Samples move to the image points of the map; all dt/dx', dx/dx' entries
/// come from invert_jacobian_blocks of the forward blocks. For rotated
/// triples the principal branch of the square root is taken and a theta
/// homotopy from pi/2 checks for branch crossings.
AdmTriple transform_triple(const AdmTriple& triple, const DiffeoMap& map);

/// Closed-form transformed value at one base point of a background.
TripleValue transform_background_at(const Background& bg, const DiffeoMap& map,
                                    const Point& base, Point* image = nullptr);

enum class FlipDirection { LorentzianToEuclidean, EuclideanToLorentzian };

/// Fiducial Wick flip (theta = pi/2 or 0) on a real triple.
AdmTriple wick_flip_fiducial(const AdmTriple& triple, FlipDirection dir);

/// Wick flip in a non-fiducial foliation: pull back with the inverse map,
/// flip in the fiducial foliation, push forward again.
AdmTriple wick_flip_nonfiducial(const AdmTriple& triple, const DiffeoMap& map,
                                FlipDirection dir);

}  // namespace lapsewick

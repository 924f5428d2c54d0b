#pragma once

#include <functional>
#include <limits>

#include "lapsewick/adm_triple.hpp"
#include "lapsewick/diffeo.hpp"
#include "lapsewick/fields.hpp"

namespace lapsewick {

/// Self-interaction potential: value and second derivative.
struct Potential {
  std::function<double(double)> value;
  std::function<double(double)> second_derivative;
};

Potential zero_potential();
Potential quadratic_potential(double m2);
/// U = m2/2 phi^2 + lambda/4 phi^4.
Potential quartic_potential(double m2, double lambda);

/// Closed-form scalar on the fiducial chart.
using ScalarFn = std::function<double(double, const Vec&)>;
/// Its spacetime gradient (d_t phi, d_a phi), when known analytically.
using ScalarGradFn = std::function<StVecR(double, const Vec&)>;

/// Rectangle-rule quadrature of the 1+d scalar Lagrangian
///   sqrt(det gamma) { e0(phi)^2 / (2N) + (eps/2) N g^{ab} d_a phi d_b phi
///                     + eps N U(phi) },
/// with e0(phi) = d_t phi - N^a d_a phi by central differences. For an
/// un-rotated triple this is the real-signature action; for a rotated one
/// (complex lapse, eps = -1 representation) it is the complexified action
/// with the real N sqrt(gamma) measure. Throws std::domain_error if U is
/// negative on the sampled range.
cplx evaluate_action(const AdmTriple& triple, const Field<double>& phi,
                     const Potential& U);

/// Pointwise e0(phi)^2 / (2 N^2) - (eps/2) g^{ab} d_a phi d_b phi
/// - eps U(phi); requires an un-rotated triple. For Lorentzian signature
/// this is non-negative when U >= 0.
Field<double> energy_momentum_bitransversal(const AdmTriple& triple,
                                            const Field<double>& phi,
                                            const Potential& U);

/// Triple value together with frame derivatives of a scalar at one point
/// of the image chart, all built by grid-free central-difference stencils
/// on closed-form data (no interpolation).
struct ChartSample {
  TripleValue tv;
  double phi = 0.0;
  cplx e0;   // e0(phi) in the image chart
  CVec dphi; // spatial gradient in the image chart
};

/// Evaluates background and scalar in the chart reached by `map` at the
/// image of `base`, using central differences with step `h` in the image
/// coordinates. `map` must carry an inverse. When `grad` is supplied the
/// derivatives are taken exactly by the chain rule instead of stencils.
ChartSample chart_sample(const Background& bg, const ScalarFn& phi,
                         const DiffeoMap& map, const Point& base, double h,
                         const ScalarGradFn* grad = nullptr);

enum class GradientCombination { Sum, Difference };

struct TwoChartReport {
  double max_residual = 0.0;
  double min_rhs_real = std::numeric_limits<double>::infinity();
};

/// Sum mode: checks that [N^{-1} e0(phi)]^2 + eps g^{ab} d_a phi d_b phi
/// is a scalar under the matching-signature transform. Difference mode:
/// checks the closed-form transformation law of the sign-flipped
/// combination and tracks the minimum of its manifestly-signed form.
/// Residuals are evaluated at the grid nodes of `g` taken as base points.
TwoChartReport gradient_combination_transform(const Background& bg,
                                              const ScalarFn& phi,
                                              const DiffeoMap& map,
                                              const Grid& g, double h,
                                              GradientCombination mode,
                                              const ScalarGradFn* grad = nullptr);

struct LagrangianScalarReport {
  double scalar_residual = 0.0;
  double decomposition_residual = 0.0;
};

/// Two-chart check of the complexified scalar Lagrangian density
///   e0(phi)^2 / (2 N_theta^2) - (1/2) g_theta^{ab} d_a phi d_b phi - U,
/// which is chart independent, and of its split into
/// cos/sin parts built from the matching-signature transforms.
LagrangianScalarReport lagrangian_scalar_residual(const Background& bg,
                                                  const ScalarFn& phi,
                                                  const Potential& U,
                                                  const DiffeoMap& map,
                                                  double theta, const Grid& g,
                                                  double h);

}  // namespace lapsewick

#pragma once

#include <optional>
#include <vector>

#include "lapsewick/adm_triple.hpp"
#include "lapsewick/fields.hpp"

namespace lapsewick {

/// Field-independent descriptor of an infinitesimal surface deformation.
/// eps0 may carry a constant phase e^{-i theta} when the triple it acts on
/// has a rotated lapse; eps holds the d tangential components.
struct Descriptor {
  Field<cplx> eps0;
  std::vector<Field<cplx>> eps;
};

Descriptor rotate_descriptor(const Descriptor& d, double theta);

/// First-order variations of the triple fields (and optionally a scalar).
/// gamma is stored as d*d per-component fields, row-major.
struct GaugeVariation {
  Field<cplx> lapse;
  std::vector<Field<cplx>> shift;
  std::vector<Field<cplx>> gamma;
  std::optional<Field<cplx>> phi;
};

/// Linearized diffeomorphism t' = t - xi0, x' = x - xi acting on the
/// triple:
///   dN     = (d_t - N^a d_a)(xi0 N) + (xi^a + xi0 N^a) d_a N,
///   dN^a   = d_t(xi^a + xi0 N^a) - [L_N(xi + xi0 N)]^a
///            + eps N^2 g^{ab} d_b xi0,
///   dg_ab  = xi0 (d_t - L_N) g_ab + L_{xi + xi0 N} g_ab,
///   dphi   = xi0 d_t phi + xi^a d_a phi.
/// Derivatives are Fourier derivatives, exact on band-limited data.
GaugeVariation gauge_variation(const AdmTriple& triple, const Field<cplx>& xi0,
                               const std::vector<Field<cplx>>& xi,
                               const Field<double>* phi = nullptr);

/// Same variation driven by a descriptor through the field-dependent
/// reparameterization xi0 = eps0 / N, xi^a = eps^a - (eps0 / N) N^a.
GaugeVariation descriptor_variation(const AdmTriple& triple,
                                    const Descriptor& d,
                                    const Field<double>* phi = nullptr);

/// Structure functions of the surface-deformation algebra:
///   gamma0 = eps1^a d_a eps2^0 - eps2^a d_a eps1^0,
///   gamma^a = [eps1, eps2]^a - eps_g g^{ab}(eps1^0 d_b eps2^0
///                                          - eps2^0 d_b eps1^0),
/// with eps_g the stored signature; for rotated triples (signature -1
/// representation) this reproduces the rotated algebra's + sign.
Descriptor structure_descriptor(const AdmTriple& triple, const Descriptor& d1,
                                const Descriptor& d2);

/// Adds s times a variation to the triple fields.
AdmTriple perturb_triple(const AdmTriple& triple, const GaugeVariation& v,
                         double s);

/// Richardson-extrapolated residual of
/// (delta_1 delta_2 - delta_2 delta_1) F + delta_{gamma} F over
/// F in {N, N^a, g_ab} (and phi when given), with the second variations
/// taken as central directional differences of step `s` in the triple
/// fields. Returns the max-norm residual.
double commutator_structure_check(const AdmTriple& triple,
                                  const Descriptor& d1, const Descriptor& d2,
                                  double s, const Field<double>* phi = nullptr);

}  // namespace lapsewick

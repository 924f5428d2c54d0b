#include "lapsewick/gauge.hpp"

#include <cmath>
#include <stdexcept>

namespace lapsewick {

namespace {

using CField = Field<cplx>;

CField scaled(const CField& f, cplx c) {
  CField out = f;
  for (auto& v : out.v) v *= c;
  return out;
}

CField combine(const CField& a, const CField& b, cplx ca, cplx cb) {
  CField out = a;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = ca * a[i] + cb * b[i];
  return out;
}

GaugeVariation combine(const GaugeVariation& a, const GaugeVariation& b,
                       cplx ca, cplx cb) {
  GaugeVariation out{combine(a.lapse, b.lapse, ca, cb), {}, {}, std::nullopt};
  for (std::size_t k = 0; k < a.shift.size(); ++k)
    out.shift.push_back(combine(a.shift[k], b.shift[k], ca, cb));
  for (std::size_t k = 0; k < a.gamma.size(); ++k)
    out.gamma.push_back(combine(a.gamma[k], b.gamma[k], ca, cb));
  if (a.phi && b.phi) out.phi = combine(*a.phi, *b.phi, ca, cb);
  return out;
}

double max_abs(const GaugeVariation& v) {
  double r = 0.0;
  auto scan = [&r](const CField& f) {
    for (const cplx& x : f.v) r = std::max(r, std::abs(x));
  };
  scan(v.lapse);
  for (const auto& f : v.shift) scan(f);
  for (const auto& f : v.gamma) scan(f);
  if (v.phi) scan(*v.phi);
  return r;
}

GaugeVariation gauge_variation_c(const AdmTriple& triple, const CField& xi0,
                                 const std::vector<CField>& xi,
                                 const CField* phi);

GaugeVariation descriptor_variation_c(const AdmTriple& triple,
                                      const Descriptor& d, const CField* phi) {
  const Grid& g = triple.grid();
  const int dim = g.dim();
  CField xi0(g);
  std::vector<CField> xi(dim, CField(g));
  for (std::size_t i = 0; i < g.size(); ++i) {
    cplx t = d.eps0[i] / triple.lapse(i);
    xi0[i] = t;
    for (int a = 0; a < dim; ++a)
      xi[a][i] = d.eps[a][i] - t * triple.shift(i)[a];
  }
  return gauge_variation_c(triple, xi0, xi, phi);
}

GaugeVariation gauge_variation_c(const AdmTriple& triple, const CField& xi0,
                                 const std::vector<CField>& xi,
                                 const CField* phi) {
  if (!triple.on_grid_nodes())
    throw std::invalid_argument("gauge_variation: triple not on grid nodes");
  const Grid& g = triple.grid();
  const int d = g.dim();
  const double eps = sig_value(triple.signature());

  CField lapse(g);
  std::vector<CField> shift(d, CField(g));
  std::vector<CField> gam(d * d, CField(g));
  for (std::size_t i = 0; i < g.size(); ++i) {
    lapse[i] = triple.lapse(i);
    for (int a = 0; a < d; ++a) {
      shift[a][i] = triple.shift(i)[a];
      for (int b = 0; b < d; ++b) gam[a * d + b][i] = triple.gamma(i)(a, b);
    }
  }

  auto all_derivs = [&](const CField& f) {
    std::vector<CField> out;
    for (int mu = 0; mu <= d; ++mu) out.push_back(spectral_diff(f, mu));
    return out;
  };

  // A = xi0 N, B^a = xi^a + xi0 N^a.
  CField A(g);
  std::vector<CField> B(d, CField(g));
  for (std::size_t i = 0; i < g.size(); ++i) {
    A[i] = xi0[i] * lapse[i];
    for (int a = 0; a < d; ++a) B[a][i] = xi[a][i] + xi0[i] * shift[a][i];
  }

  auto dA = all_derivs(A);
  auto dN = all_derivs(lapse);
  auto dxi0 = all_derivs(xi0);
  std::vector<std::vector<CField>> dB, dNa, dG;
  for (int a = 0; a < d; ++a) dB.push_back(all_derivs(B[a]));
  for (int a = 0; a < d; ++a) dNa.push_back(all_derivs(shift[a]));
  for (int k = 0; k < d * d; ++k) dG.push_back(all_derivs(gam[k]));

  GaugeVariation out{CField(g), std::vector<CField>(d, CField(g)),
                     std::vector<CField>(d * d, CField(g)), std::nullopt};
  for (std::size_t i = 0; i < g.size(); ++i) {
    cplx n = lapse[i];
    CMat gmat(d, d), gi(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) gmat(a, b) = gam[a * d + b][i];
    gi = gmat.inverse();

    cplx dn = dA[0][i];
    for (int a = 0; a < d; ++a)
      dn += -shift[a][i] * dA[a + 1][i] + B[a][i] * dN[a + 1][i];
    out.lapse[i] = dn;

    for (int a = 0; a < d; ++a) {
      cplx v = dB[a][0][i];
      for (int b = 0; b < d; ++b)
        v -= shift[b][i] * dB[a][b + 1][i] - B[b][i] * dNa[a][b + 1][i];
      for (int b = 0; b < d; ++b)
        v += eps * n * n * gi(a, b) * dxi0[b + 1][i];
      out.shift[a][i] = v;
    }

    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        // (L_V g)_ab = V^c d_c g_ab + g_cb d_a V^c + g_ac d_b V^c.
        cplx lie_n = 0.0, lie_b = 0.0;
        for (int c = 0; c < d; ++c) {
          lie_n += shift[c][i] * dG[a * d + b][c + 1][i] +
                   gmat(c, b) * dNa[c][a + 1][i] +
                   gmat(a, c) * dNa[c][b + 1][i];
          lie_b += B[c][i] * dG[a * d + b][c + 1][i] +
                   gmat(c, b) * dB[c][a + 1][i] + gmat(a, c) * dB[c][b + 1][i];
        }
        out.gamma[a * d + b][i] =
            xi0[i] * (dG[a * d + b][0][i] - lie_n) + lie_b;
      }
  }

  if (phi) {
    auto dphi = all_derivs(*phi);
    CField dp(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      dp[i] = xi0[i] * dphi[0][i];
      for (int a = 0; a < d; ++a) dp[i] += xi[a][i] * dphi[a + 1][i];
    }
    out.phi = dp;
  }
  return out;
}

}  // namespace

Descriptor rotate_descriptor(const Descriptor& d, double theta) {
  Descriptor out = d;
  out.eps0 = scaled(d.eps0, std::polar(1.0, -theta));
  return out;
}

GaugeVariation gauge_variation(const AdmTriple& triple, const Field<cplx>& xi0,
                               const std::vector<Field<cplx>>& xi,
                               const Field<double>* phi) {
  if (!phi) return gauge_variation_c(triple, xi0, xi, nullptr);
  CField p(phi->grid);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = (*phi)[i];
  return gauge_variation_c(triple, xi0, xi, &p);
}

GaugeVariation descriptor_variation(const AdmTriple& triple,
                                    const Descriptor& d,
                                    const Field<double>* phi) {
  if (!phi) return descriptor_variation_c(triple, d, nullptr);
  CField p(phi->grid);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = (*phi)[i];
  return descriptor_variation_c(triple, d, &p);
}

Descriptor structure_descriptor(const AdmTriple& triple, const Descriptor& d1,
                                const Descriptor& d2) {
  const Grid& g = triple.grid();
  const int d = g.dim();
  const double eps = sig_value(triple.signature());

  std::vector<CField> de1, de2;  // spatial derivatives of eps0
  for (int a = 0; a < d; ++a) {
    de1.push_back(spectral_diff(d1.eps0, a + 1));
    de2.push_back(spectral_diff(d2.eps0, a + 1));
  }
  std::vector<std::vector<CField>> dv1, dv2;
  for (int a = 0; a < d; ++a) {
    std::vector<CField> r1, r2;
    for (int b = 0; b < d; ++b) {
      r1.push_back(spectral_diff(d1.eps[a], b + 1));
      r2.push_back(spectral_diff(d2.eps[a], b + 1));
    }
    dv1.push_back(r1);
    dv2.push_back(r2);
  }

  Descriptor out{CField(g), std::vector<CField>(d, CField(g))};
  for (std::size_t i = 0; i < g.size(); ++i) {
    cplx g0 = 0.0;
    for (int a = 0; a < d; ++a)
      g0 += d1.eps[a][i] * de2[a][i] - d2.eps[a][i] * de1[a][i];
    out.eps0[i] = g0;

    CMat gi = triple.gamma(i).inverse();
    for (int a = 0; a < d; ++a) {
      cplx v = 0.0;
      for (int b = 0; b < d; ++b)
        v += d1.eps[b][i] * dv2[a][b][i] - d2.eps[b][i] * dv1[a][b][i];
      for (int b = 0; b < d; ++b)
        v -= eps * gi(a, b) *
             (d1.eps0[i] * de2[b][i] - d2.eps0[i] * de1[b][i]);
      out.eps[a][i] = v;
    }
  }
  return out;
}

AdmTriple perturb_triple(const AdmTriple& triple, const GaugeVariation& v,
                         double s) {
  const int d = triple.grid().dim();
  AdmTriple out = triple;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.lapse(i) += s * v.lapse[i];
    for (int a = 0; a < d; ++a) {
      out.shift(i)[a] += s * v.shift[a][i];
      for (int b = 0; b < d; ++b)
        out.gamma(i)(a, b) += s * v.gamma[a * d + b][i];
    }
  }
  return out;
}

double commutator_structure_check(const AdmTriple& triple,
                                  const Descriptor& d1, const Descriptor& d2,
                                  double s, const Field<double>* phi) {
  std::optional<CField> phic;
  if (phi) {
    phic.emplace(phi->grid);
    for (std::size_t i = 0; i < phic->size(); ++i) (*phic)[i] = (*phi)[i];
  }
  const CField* pc = phic ? &*phic : nullptr;

  auto second = [&](const Descriptor& da, const Descriptor& db, double step) {
    GaugeVariation va = descriptor_variation_c(triple, da, pc);
    auto eval = [&](double sg) {
      AdmTriple tp = perturb_triple(triple, va, sg);
      std::optional<CField> pp;
      if (pc) {
        pp = combine(*pc, *va.phi, 1.0, sg);
      }
      return descriptor_variation_c(tp, db, pp ? &*pp : nullptr);
    };
    return combine(eval(step), eval(-step), 1.0 / (2.0 * step),
                   -1.0 / (2.0 * step));
  };
  auto commutator = [&](double step) {
    return combine(second(d1, d2, step), second(d2, d1, step), 1.0, -1.0);
  };

  // Central differences carry an even error series in the step; two
  // Richardson levels leave O(s^6).
  GaugeVariation c1 = commutator(s);
  GaugeVariation c2 = commutator(s / 2.0);
  GaugeVariation c4 = commutator(s / 4.0);
  GaugeVariation e1 = combine(c2, c1, 4.0 / 3.0, -1.0 / 3.0);
  GaugeVariation e2 = combine(c4, c2, 4.0 / 3.0, -1.0 / 3.0);
  GaugeVariation extrap = combine(e2, e1, 16.0 / 15.0, -1.0 / 15.0);

  GaugeVariation target =
      descriptor_variation_c(triple, structure_descriptor(triple, d1, d2), pc);
  return max_abs(combine(extrap, target, 1.0, 1.0));
}

}  // namespace lapsewick

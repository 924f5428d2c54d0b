#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "lapsewick/gauge.hpp"
#include "lapsewick/wick.hpp"

using namespace lapsewick;

namespace {
constexpr double kPi = 3.14159265358979323846;

Field<cplx> mode(const Grid& g, int kt, int kx, double amp, double phase) {
  return sample_field<cplx>(g, [=](double t, const Vec& x) {
    return cplx(amp * std::cos(2.0 * kPi * (kt * t + kx * x[0]) + phase), 0.0);
  });
}

Descriptor band_limited_descriptor(const Grid& g, unsigned seed, double amp) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
  std::uniform_int_distribution<int> wav(-2, 2);
  Descriptor d{Field<cplx>(g, cplx(0.0, 0.0)), {}};
  d.eps.push_back(Field<cplx>(g, cplx(0.0, 0.0)));
  for (int m = 0; m < 4; ++m) {
    Field<cplx> f0 = mode(g, wav(rng), wav(rng), amp / 4.0, ph(rng));
    Field<cplx> f1 = mode(g, wav(rng), wav(rng), amp / 4.0, ph(rng));
    for (std::size_t i = 0; i < g.size(); ++i) {
      d.eps0[i] += f0[i];
      d.eps[0][i] += f1[i];
    }
  }
  return d;
}
}  // namespace

TEST_CASE("descriptor rotation multiplies the normal part by a phase") {
  Grid g(1, 8, 8, 1.0, 1.0);
  Descriptor d = band_limited_descriptor(g, 1, 0.5);
  Descriptor r = rotate_descriptor(d, 0.7);
  cplx ph = std::exp(cplx(0.0, -0.7));
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(r.eps0[i] - ph * d.eps0[i]) < 1e-15);
    CHECK(std::abs(r.eps[0][i] - d.eps[0][i]) < 1e-15);
  }
}

TEST_CASE("perturbation is linear in the step") {
  Grid g(1, 16, 16, 1.0, 1.0);
  Background bg = curved_background(1, Signature::Lorentzian, 1.0, 1.0, 0.08, 9);
  AdmTriple tri = sample_triple(bg, g);
  Descriptor d = band_limited_descriptor(g, 2, 0.3);
  GaugeVariation v = descriptor_variation(tri, d);
  AdmTriple t1 = perturb_triple(tri, v, 0.25);
  AdmTriple t2 = perturb_triple(perturb_triple(tri, v, 0.1), v, 0.15);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(t1.lapse(i) - t2.lapse(i)) < 1e-14);
    CHECK(std::abs(t1.shift(i)[0] - t2.shift(i)[0]) < 1e-14);
    CHECK(std::abs(t1.gamma(i)(0, 0) - t2.gamma(i)(0, 0)) < 1e-14);
  }
}

TEST_CASE("descriptor and direct parameterizations agree on flat data") {
  // With N = 1 and zero shift the reparameterization is the identity:
  // xi0 = eps0, xi = eps.
  Grid g(1, 16, 16, 1.0, 1.0);
  AdmTriple tri = sample_triple(flat_background(1, Signature::Lorentzian), g);
  Descriptor d = band_limited_descriptor(g, 3, 0.4);
  GaugeVariation a = descriptor_variation(tri, d);
  GaugeVariation b = gauge_variation(tri, d.eps0, d.eps);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(a.lapse[i] - b.lapse[i]) < 1e-12);
    CHECK(std::abs(a.shift[0][i] - b.shift[0][i]) < 1e-12);
    CHECK(std::abs(a.gamma[0][i] - b.gamma[0][i]) < 1e-12);
  }
}

TEST_CASE("commutators close on the structure functions") {
  // The Fourier derivatives in the variations act on rational functions of
  // the background fields, so the grid must resolve their harmonic tails;
  // 48 nodes per axis keeps the aliasing floor below the tolerance.
  Grid g(1, 48, 48, 1.0, 1.0);
  Background bg = curved_background(1, Signature::Lorentzian, 1.0, 1.0, 0.08, 21);
  AdmTriple tri = sample_triple(bg, g);
  auto phi = sample_field<double>(g, [](double t, const Vec& x) {
    return 0.3 * std::cos(2.0 * kPi * (t + x[0]));
  });
  for (unsigned k = 0; k < 3; ++k) {
    Descriptor d1 = band_limited_descriptor(g, 100 + k, 0.25);
    Descriptor d2 = band_limited_descriptor(g, 200 + k, 0.25);
    double res = commutator_structure_check(tri, d1, d2, 0.005,
                                            k == 0 ? &phi : nullptr);
    CHECK(res < 1e-6);
  }
}

TEST_CASE("the rotated algebra closes with the same structure functions") {
  Grid g(1, 48, 48, 1.0, 1.0);
  Background bg = curved_background(1, Signature::Lorentzian, 1.0, 1.0, 0.08, 22);
  AdmTriple tri = wick_rotate_fiducial(sample_triple(bg, g), 0.7);
  for (unsigned k = 0; k < 3; ++k) {
    Descriptor d1 =
        rotate_descriptor(band_limited_descriptor(g, 300 + k, 0.25), 0.7);
    Descriptor d2 =
        rotate_descriptor(band_limited_descriptor(g, 400 + k, 0.25), 0.7);
    CHECK(commutator_structure_check(tri, d1, d2, 0.005) < 1e-6);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lapsewick/adm_triple.hpp"
#include "lapsewick/diffeo.hpp"
#include "lapsewick/frame.hpp"
#include "lapsewick/metric.hpp"
#include "lapsewick/tensor_components.hpp"
#include "lapsewick/wick.hpp"

using namespace lapsewick;

namespace {
constexpr double kPi = 3.14159265358979323846;

Background curved() {
  return curved_background(1, Signature::Lorentzian, 1.0, 1.0, 0.08, 42);
}
}  // namespace

TEST_CASE("block Jacobian inversion matches the dense inverse") {
  DiffeoMap m = shear_map(2, 0.3, 1, 1.0);
  Point p;
  p.t = 0.37;
  p.x = Vec::Zero(2);
  p.x << 0.21, 0.55;
  JacobianBlocks fwd = m.jacobian(p);
  JacobianBlocks inv = invert_jacobian_blocks(fwd);
  Eigen::MatrixXd prod = fwd.full() * inv.full();
  CHECK((prod - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("map composition matches pointwise composition") {
  DiffeoMap a = boost_map(1, 0.4);
  DiffeoMap b = shear_map(1, 0.2, 1, 1.0);
  DiffeoMap c = compose_diffeos(a, b);
  Point p;
  p.t = 0.31;
  p.x = Vec::Constant(1, -0.12);
  Point direct = b.map(a.map(p));
  Point composed = c.map(p);
  CHECK(std::abs(direct.t - composed.t) < 1e-12);
  CHECK(std::abs(direct.x[0] - composed.x[0]) < 1e-12);
  Eigen::MatrixXd chain = b.jacobian(a.map(p)).full() * a.jacobian(p).full();
  CHECK((chain - c.jacobian(p).full()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("catalog maps invert and parse") {
  for (const std::string& spec :
       {"identity", "boost:0.5", "shear:0.1,1", "tscale:2", "flow:0.1,1"}) {
    DiffeoMap m = parse_map_spec(spec, 1, 1.0, 1.0);
    REQUIRE(m.has_inverse());
    Point p;
    p.t = 0.4;
    p.x = Vec::Constant(1, 0.27);
    Point back = m.inverse().map(m.map(p));
    CHECK(std::abs(back.t - p.t) < 1e-9);
    CHECK(std::abs(back.x[0] - p.x[0]) < 1e-9);
  }
  CHECK_THROWS(parse_map_spec("unknown:1", 1, 1.0, 1.0));
}

TEST_CASE("boost leaves the flat line element invariant for all angles") {
  Background bg = flat_background(1, Signature::Lorentzian);
  DiffeoMap m = boost_map(1, 0.3);
  Point p;
  p.t = 0.2;
  p.x = Vec::Constant(1, 0.7);
  JacobianBlocks fwd = m.jacobian(p);
  JacobianBlocks inv = invert_jacobian_blocks(fwd);
  for (double theta : {0.0, 0.3, kPi / 2.0, 2.5}) {
    TripleValue tv = bg.at(p.t, p.x);
    tv.lapse *= std::polar(1.0, -theta);
    TripleValue tvp = transform_value(tv, -tv.lapse * tv.lapse, fwd, inv);
    StMat gfid = metric_value(tv, Signature::Lorentzian);
    StMat gpr = metric_value(tvp, Signature::Lorentzian);
    Eigen::MatrixXcd jac = fwd.full().cast<cplx>();
    StMat pull = jac.transpose() * gpr * jac;
    CHECK((gfid - pull).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("fiducial rotation stores the tagged representation") {
  Grid g(1, 4, 4, 1.0, 1.0);
  AdmTriple tri = sample_triple(curved(), g);
  AdmTriple rot = wick_rotate_fiducial(tri, 0.8);
  CHECK(rot.rotated());
  CHECK(rot.rotation().value() == doctest::Approx(0.8));
  CHECK(rot.signature() == Signature::Lorentzian);
  for (std::size_t i = 0; i < rot.size(); ++i) {
    cplx expect = std::polar(1.0, -0.8) * tri.lapse(i).real();
    CHECK(std::abs(rot.lapse(i) - expect) < 1e-14);
  }
  CHECK_THROWS_AS(wick_rotate_fiducial(rot, 0.2), std::domain_error);
  CHECK_THROWS_AS(wick_rotate_fiducial(tri, -0.1), std::domain_error);
  CHECK_THROWS_AS(wick_rotate_fiducial(tri, kPi), std::domain_error);
}

TEST_CASE("flips project between real signatures") {
  Grid g(1, 4, 4, 1.0, 1.0);
  AdmTriple tri = sample_triple(curved(), g);
  AdmTriple rot = wick_rotate_fiducial(tri, kPi / 2.0);
  // A flip is only defined on real triples; strip the phase first.
  AdmTriple real_rot = rot;
  for (std::size_t i = 0; i < real_rot.size(); ++i)
    real_rot.lapse(i) = std::abs(real_rot.lapse(i));
  real_rot.set_rotation(std::nullopt);
  AdmTriple eu = wick_flip_fiducial(real_rot, FlipDirection::LorentzianToEuclidean);
  CHECK(eu.signature() == Signature::Euclidean);
  CHECK(!eu.rotated());
  AdmTriple back = wick_flip_fiducial(eu, FlipDirection::EuclideanToLorentzian);
  CHECK(back.signature() == Signature::Lorentzian);
  for (std::size_t i = 0; i < back.size(); ++i)
    CHECK(std::abs(back.lapse(i) - tri.lapse(i)) < 1e-12);
}

TEST_CASE("degenerate leaves and branch crossings are rejected") {
  // dt'/dx chosen so C^2 + eps N^2 q = 1 - q vanishes (q = 1).
  TripleValue tv;
  tv.lapse = 1.0;
  tv.shift = CVec::Zero(1);
  tv.gamma = CMat::Identity(1, 1);
  JacobianBlocks fwd;
  fwd.dt_dt = 1.0;
  fwd.dt_dx = Vec::Constant(1, 1.0);
  fwd.dx_dt = Vec::Zero(1);
  fwd.dx_dx = Mat::Identity(1, 1);
  JacobianBlocks inv = fwd;  // unused before the guard fires
  CHECK_THROWS_AS(transform_value(tv, cplx(-1.0), fwd, inv),
                  DegenerateLeafError);
  // q = 2 pushes the radicand onto the negative real axis.
  fwd.dt_dx = Vec::Constant(1, std::sqrt(2.0));
  CHECK_THROWS_AS(transform_value(tv, cplx(-1.0), fwd, inv), BranchCutError);
}

TEST_CASE("foliation frame satisfies duality and completeness") {
  Grid g(2, 4, 4, 1.0, 1.0);
  Background bg = curved_background(2, Signature::Lorentzian, 1.0, 1.0, 0.1, 9);
  FoliationFrame fr = foliation_frame(sample_triple(bg, g));
  CHECK(fr.duality_residual() < 1e-12);
  CHECK(fr.completeness_residual() < 1e-12);
}

TEST_CASE("frame pairing is invariant under chart changes") {
  Background bg = curved();
  DiffeoMap m = shear_map(1, 0.2, 1, 1.0);
  Point p;
  p.t = 0.4;
  p.x = Vec::Constant(1, 0.6);
  TripleValue tv = bg.at(p.t, p.x);
  JacobianBlocks fwd = m.jacobian(p);
  JacobianBlocks inv = invert_jacobian_blocks(fwd);
  CovectorComponents cov{cplx(0.3, 0.1), CVec::Constant(1, cplx(-0.2, 0.5))};
  VectorComponents vec{cplx(-1.1, 0.2), CVec::Constant(1, cplx(0.4, -0.3))};
  cplx before = frame_pairing(-1.0, cov, vec);
  cplx after = frame_pairing(-1.0, transform_covector(cov, tv, -1.0, fwd, inv),
                             transform_vector(vec, tv, -1.0, fwd, inv));
  CHECK(std::abs(after - before) < 1e-13);
}

TEST_CASE("covector components reassemble the spacetime covector") {
  Background bg = curved();
  TripleValue tv = bg.at(0.3, Vec::Constant(1, 0.2));
  CovectorComponents cov{cplx(0.7, 0.0), CVec::Constant(1, cplx(0.2, 0.0))};
  StVec w = covector_spacetime(cov, tv);
  CHECK(std::abs(w[0] - (cov.v * tv.lapse + cov.v_a[0] * tv.shift[0])) < 1e-15);
  CHECK(std::abs(w[1] - cov.v_a[0]) < 1e-15);
}

TEST_CASE("rank-one reassembly holds off the fiducial chart") {
  Background bg = curved();
  DiffeoMap m = boost_map(1, 0.25);
  Point p;
  p.t = 0.15;
  p.x = Vec::Constant(1, 0.45);
  TripleValue tv = bg.at(p.t, p.x);
  JacobianBlocks fwd = m.jacobian(p);
  JacobianBlocks inv = invert_jacobian_blocks(fwd);
  for (double theta : {0.3, 1.2, 2.8}) {
    CHECK(rank_one_metric_residual(tv, -1.0, theta, fwd, inv) < 1e-12);
    CHECK(rank_one_inverse_residual(tv, -1.0, theta, fwd, inv) < 1e-12);
  }
}

TEST_CASE("rotated frame Gram matrix has the rank-one form") {
  StVecR eps_I(2);
  eps_I << 0.4, -0.3;
  StMat gram = frame_gram(-1.0, 0.9, eps_I);
  cplx coef = -1.0 + std::polar(1.0, -1.8);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      cplx expect = (i == j ? 1.0 : 0.0) - coef * eps_I[i] * eps_I[j];
      CHECK(std::abs(gram(i, j) - expect) < 1e-14);
    }
}

TEST_CASE("metric reconstruction is consistent with its inverse") {
  Grid g(1, 6, 6, 1.0, 1.0);
  AdmTriple tri = wick_rotate_fiducial(sample_triple(curved(), g), 0.6);
  ComplexMetricField m = reconstruct_metric(tri);
  CHECK(inverse_consistency_residual(m) < 1e-12);
}

TEST_CASE("triple transformation carries samples to image points") {
  Grid g(1, 4, 4, 1.0, 1.0);
  AdmTriple tri = sample_triple(curved(), g);
  DiffeoMap m = boost_map(1, 0.2);
  AdmTriple moved = transform_triple(tri, m);
  CHECK(!moved.on_grid_nodes());
  for (std::size_t i = 0; i < moved.size(); ++i) {
    Point img = m.map(tri.point(i));
    CHECK(std::abs(moved.point(i).t - img.t) < 1e-12);
    CHECK(std::abs(moved.point(i).x[0] - img.x[0]) < 1e-12);
  }
}

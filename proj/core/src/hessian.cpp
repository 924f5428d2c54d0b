#include "lapsewick/hessian.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "lapsewick/wick.hpp"

namespace lapsewick {

namespace {

Eigen::VectorXcd sparse_apply(const Eigen::SparseMatrix<double>& m,
                              const Eigen::VectorXcd& f) {
  Eigen::VectorXd re = m * f.real();
  Eigen::VectorXd im = m * f.imag();
  return re + cplx(0.0, 1.0) * im;
}

double max_abs(const Eigen::SparseMatrix<double>& m) {
  double r = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
      r = std::max(r, std::abs(it.value()));
  return r;
}

}  // namespace

Eigen::VectorXcd HessianOperator::apply_dplus(const Eigen::VectorXcd& f) const {
  Eigen::VectorXcd mf = sparse_apply(m_t, f) + sparse_apply(m_s, f);
  return weight.cwiseInverse().asDiagonal() * mf + pot.asDiagonal() * f;
}

Eigen::VectorXcd HessianOperator::apply_dminus(const Eigen::VectorXcd& f) const {
  Eigen::VectorXcd mf = sparse_apply(m_s, f) - sparse_apply(m_t, f);
  return weight.cwiseInverse().asDiagonal() * mf + pot.asDiagonal() * f;
}

Eigen::VectorXcd HessianOperator::apply_delta(const Eigen::VectorXcd& f) const {
  return -std::sin(theta) * apply_dplus(f) -
         cplx(0.0, 1.0) * std::cos(theta) * apply_dminus(f);
}

Eigen::MatrixXcd HessianOperator::dense_delta() const {
  Eigen::MatrixXd mt(m_t), ms(m_s);
  Eigen::VectorXd winv = weight.cwiseInverse();
  Eigen::MatrixXd dplus = winv.asDiagonal() * (mt + ms);
  Eigen::MatrixXd dminus = winv.asDiagonal() * (ms - mt);
  dplus += Eigen::MatrixXd(pot.asDiagonal());
  dminus += Eigen::MatrixXd(pot.asDiagonal());
  return -std::sin(theta) * dplus.cast<cplx>() -
         cplx(0.0, 1.0) * std::cos(theta) * dminus.cast<cplx>();
}

double HessianOperator::self_adjoint_residual() const {
  double r = 0.0;
  for (const auto* m : {&m_t, &m_s}) {
    Eigen::SparseMatrix<double> d = weight.cwiseInverse().asDiagonal() * (*m);
    Eigen::SparseMatrix<double> lhs = Eigen::SparseMatrix<double>(
        weight.asDiagonal() * d);
    Eigen::SparseMatrix<double> rhs = Eigen::SparseMatrix<double>(
        Eigen::SparseMatrix<double>(d.transpose()) * weight.asDiagonal());
    Eigen::SparseMatrix<double> diff = lhs - rhs;
    r = std::max(r, max_abs(diff));
  }
  return r;
}

HessianOperator assemble_hessian(const AdmTriple& triple,
                                 const Field<double>& V, double theta) {
  if (triple.rotated())
    throw std::domain_error("assemble_hessian: rotated triple");
  if (theta < 0.0 || theta >= std::numbers::pi)
    throw std::domain_error("assemble_hessian: theta outside [0, pi)");
  const Grid& g = triple.grid();
  const int d = g.dim();
  const std::size_t n = g.size();
  const double ht = g.ht(), hx = g.hx(), vol = g.cell_volume();

  std::vector<double> lapse(n), sg(n);
  std::vector<Vec> shift(n);
  std::vector<Mat> gi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lapse[i] = triple.lapse(i).real();
    Mat gamma = triple.gamma(i).real();
    sg[i] = std::sqrt(gamma.determinant());
    gi[i] = gamma.inverse();
    shift[i] = triple.shift(i).real();
    if (V[i] < 0.0)
      throw std::domain_error("assemble_hessian: negative potential");
  }

  HessianOperator op{g, theta, Eigen::VectorXd(n),
                     Eigen::SparseMatrix<double>(n, n),
                     Eigen::SparseMatrix<double>(n, n), Eigen::VectorXd(n)};
  for (std::size_t i = 0; i < n; ++i) {
    op.weight[i] = lapse[i] * sg[i] * vol;
    op.pot[i] = V[i];
  }

  using Trip = Eigen::Triplet<double>;

  // Forward e0 pair: time difference to the next slice, shift advection
  // averaged over the two slices so the stencil is centered at t + ht/2.
  std::vector<Trip> te;
  Eigen::VectorXd ct(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t jt = g.neighbor(i, 0, +1);
    te.emplace_back(i, jt, 1.0 / ht);
    te.emplace_back(i, i, -1.0 / ht);
    for (int a = 0; a < d; ++a) {
      double ca = 0.5 * shift[i][a] / (2.0 * hx);
      te.emplace_back(i, g.neighbor(i, a + 1, +1), -ca);
      te.emplace_back(i, g.neighbor(i, a + 1, -1), +ca);
      double cb = 0.5 * shift[jt][a] / (2.0 * hx);
      te.emplace_back(i, g.neighbor(jt, a + 1, +1), -cb);
      te.emplace_back(i, g.neighbor(jt, a + 1, -1), +cb);
    }
    ct[i] = std::sqrt((sg[i] / lapse[i]) * (sg[jt] / lapse[jt])) * vol;
  }
  Eigen::SparseMatrix<double> e0(n, n);
  e0.setFromTriplets(te.begin(), te.end());
  op.m_t = Eigen::SparseMatrix<double>(e0.transpose()) *
           Eigen::SparseMatrix<double>(ct.asDiagonal() * e0);

  // Spatial diagonal part: compact forward/backward pairs with
  // geometric-mean midpoint coefficients; cross terms: symmetrized
  // central differences (absent on diagonal metrics).
  Eigen::SparseMatrix<double> ms(n, n);
  for (int a = 0; a < d; ++a) {
    std::vector<Trip> td;
    Eigen::VectorXd ca(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t ja = g.neighbor(i, a + 1, +1);
      td.emplace_back(i, ja, 1.0 / hx);
      td.emplace_back(i, i, -1.0 / hx);
      ca[i] = std::sqrt(lapse[i] * sg[i] * lapse[ja] * sg[ja]) * 0.5 *
              (gi[i](a, a) + gi[ja](a, a)) * vol;
    }
    Eigen::SparseMatrix<double> da(n, n);
    da.setFromTriplets(td.begin(), td.end());
    ms += Eigen::SparseMatrix<double>(da.transpose()) *
          Eigen::SparseMatrix<double>(ca.asDiagonal() * da);
  }
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      std::vector<Trip> ta, tb;
      Eigen::VectorXd cab(n);
      for (std::size_t i = 0; i < n; ++i) {
        ta.emplace_back(i, g.neighbor(i, a + 1, +1), 1.0 / (2.0 * hx));
        ta.emplace_back(i, g.neighbor(i, a + 1, -1), -1.0 / (2.0 * hx));
        tb.emplace_back(i, g.neighbor(i, b + 1, +1), 1.0 / (2.0 * hx));
        tb.emplace_back(i, g.neighbor(i, b + 1, -1), -1.0 / (2.0 * hx));
        cab[i] = lapse[i] * sg[i] * gi[i](a, b) * vol;
      }
      Eigen::SparseMatrix<double> da(n, n), db(n, n);
      da.setFromTriplets(ta.begin(), ta.end());
      db.setFromTriplets(tb.begin(), tb.end());
      Eigen::SparseMatrix<double> cross =
          Eigen::SparseMatrix<double>(da.transpose()) *
          Eigen::SparseMatrix<double>(cab.asDiagonal() * db);
      ms += cross;
      ms += Eigen::SparseMatrix<double>(cross.transpose());
    }
  op.m_s = ms;
  return op;
}

cplx weighted_inner(const HessianOperator& op, const Eigen::VectorXcd& f,
                    const Eigen::VectorXcd& g) {
  cplx s = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i)
    s += op.weight[i] * std::conj(f[i]) * g[i];
  return s;
}

double adjoint_residual(const HessianOperator& op_theta,
                        const HessianOperator& op_reflect, int pairs,
                        unsigned seed) {
  if ((op_theta.weight - op_reflect.weight).cwiseAbs().maxCoeff() > 1e-14)
    throw std::invalid_argument("adjoint_residual: weight mismatch");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::Index n = op_theta.weight.size();
  double res = 0.0;
  for (int k = 0; k < pairs; ++k) {
    Eigen::VectorXcd f(n), g(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      f[i] = cplx(gauss(rng), gauss(rng));
      g[i] = cplx(gauss(rng), gauss(rng));
    }
    double nf = std::sqrt(weighted_inner(op_theta, f, f).real());
    double ng = std::sqrt(weighted_inner(op_theta, g, g).real());
    cplx lhs = weighted_inner(op_theta, f, op_theta.apply_delta(g));
    cplx rhs = weighted_inner(op_theta, op_reflect.apply_delta(f), g);
    res = std::max(res, std::abs(lhs - rhs) / (nf * ng));
  }
  return res;
}

namespace {

struct ChartFields {
  double lapse = 0.0, sg = 0.0;
  Vec shift;
  Mat gi;
  double phi = 0.0;
};

ChartFields chart_fields(const Background& bg, const ScalarFn& phi,
                         const DiffeoMap& map, const Point& z) {
  Point back = map.inverse().map(z);
  TripleValue tv = transform_background_at(bg, map, back, nullptr);
  ChartFields cf;
  cf.lapse = tv.lapse.real();
  Mat gamma = tv.gamma.real();
  cf.sg = std::sqrt(gamma.determinant());
  cf.gi = gamma.inverse();
  cf.shift = tv.shift.real();
  cf.phi = phi(back.t, back.x);
  return cf;
}

Point shifted(const Point& z, int mu, double h) {
  Point out = z;
  if (mu == 0)
    out.t += h;
  else
    out.x[mu - 1] += h;
  return out;
}

/// eps * temporal + spatial part of the Laplace-Beltrami operator applied
/// to phi' at the image of `base`, by nested central differences.
double laplacian_at(const Background& bg, const ScalarFn& phi,
                    const DiffeoMap& map, double eps, const Point& base,
                    double h) {
  const int d = static_cast<int>(base.x.size());
  Point image = map.map(base);

  auto inner_t = [&](const Point& z) {
    ChartFields cf = chart_fields(bg, phi, map, z);
    double e0 = 0.0;
    for (int mu = 0; mu <= d; ++mu) {
      double dmu = (chart_fields(bg, phi, map, shifted(z, mu, h)).phi -
                    chart_fields(bg, phi, map, shifted(z, mu, -h)).phi) /
                   (2.0 * h);
      if (mu == 0)
        e0 += dmu;
      else
        e0 -= cf.shift[mu - 1] * dmu;
    }
    return cf.sg / cf.lapse * e0;
  };
  auto inner_shift = [&](const Point& z, int a) {
    ChartFields cf = chart_fields(bg, phi, map, z);
    return cf.shift[a] * inner_t(z);
  };
  auto inner_s = [&](const Point& z, int a) {
    ChartFields cf = chart_fields(bg, phi, map, z);
    double s = 0.0;
    for (int b = 0; b < d; ++b) {
      double db = (chart_fields(bg, phi, map, shifted(z, b + 1, h)).phi -
                   chart_fields(bg, phi, map, shifted(z, b + 1, -h)).phi) /
                  (2.0 * h);
      s += cf.gi(a, b) * db;
    }
    return cf.lapse * cf.sg * s;
  };

  ChartFields at = chart_fields(bg, phi, map, image);
  double lap_t =
      (inner_t(shifted(image, 0, h)) - inner_t(shifted(image, 0, -h))) /
      (2.0 * h);
  for (int a = 0; a < d; ++a)
    lap_t -= (inner_shift(shifted(image, a + 1, h), a) -
              inner_shift(shifted(image, a + 1, -h), a)) /
             (2.0 * h);
  double lap_s = 0.0;
  for (int a = 0; a < d; ++a)
    lap_s += (inner_s(shifted(image, a + 1, h), a) -
              inner_s(shifted(image, a + 1, -h), a)) /
             (2.0 * h);
  return (eps * lap_t + lap_s) / (at.lapse * at.sg);
}

}  // namespace

cplx delta_theta_at(const Background& bg, const ScalarFn& phi,
                    const ScalarFn& V, const DiffeoMap& map, double theta,
                    const Point& base, double h) {
  Background bg_minus = bg;
  bg_minus.sig = Signature::Lorentzian;
  Background bg_plus = bg;
  bg_plus.sig = Signature::Euclidean;
  double lap_plus = laplacian_at(bg_plus, phi, map, +1.0, base, h);
  double lap_minus = laplacian_at(bg_minus, phi, map, -1.0, base, h);
  double vphi = V(base.t, base.x) * phi(base.t, base.x);
  cplx dplus = -lap_plus + vphi;
  cplx dminus = -lap_minus + vphi;
  return -std::sin(theta) * dplus - cplx(0.0, 1.0) * std::cos(theta) * dminus;
}

double hessian_invariance_residual(const Background& bg, const ScalarFn& phi,
                                   const ScalarFn& V, const DiffeoMap& map,
                                   double theta, const Grid& g, double h) {
  DiffeoMap id = identity_map(g.dim());
  double res = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Point base = g.point(i);
    cplx fid = delta_theta_at(bg, phi, V, id, theta, base, h);
    cplx pr = delta_theta_at(bg, phi, V, map, theta, base, h);
    res = std::max(res, std::abs(fid - pr));
  }
  return res;
}

}  // namespace lapsewick

#include "lapsewick/diffeo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lapsewick {

JacobianBlocks JacobianBlocks::identity(int d) {
  JacobianBlocks b;
  b.dt_dt = 1.0;
  b.dt_dx = Vec::Zero(d);
  b.dx_dt = Vec::Zero(d);
  b.dx_dx = Mat::Identity(d, d);
  return b;
}

Eigen::MatrixXd JacobianBlocks::full() const {
  const int d = dim();
  Eigen::MatrixXd J(d + 1, d + 1);
  J(0, 0) = dt_dt;
  for (int a = 0; a < d; ++a) {
    J(0, 1 + a) = dt_dx[a];
    J(1 + a, 0) = dx_dt[a];
    for (int b = 0; b < d; ++b) J(1 + a, 1 + b) = dx_dx(a, b);
  }
  return J;
}

DiffeoMap::DiffeoMap(int d, TimeMap t, SpaceMap x, JacFn jac)
    : d_(d), tmap_(std::move(t)), xmap_(std::move(x)), jac_(std::move(jac)) {}

Point DiffeoMap::map(const Point& p) const {
  Point q;
  q.t = tmap_(p.t, p.x);
  q.x = xmap_(p.t, p.x);
  return q;
}

JacobianBlocks DiffeoMap::jacobian(const Point& p) const {
  if (jac_) return jac_(p.t, p.x);
  // Central differences of step fd_step_ in each coordinate.
  JacobianBlocks b;
  b.dt_dx = Vec::Zero(d_);
  b.dx_dt = Vec::Zero(d_);
  b.dx_dx = Mat::Zero(d_, d_);
  const double h = fd_step_;
  {
    Point pp = p, pm = p;
    pp.t += h;
    pm.t -= h;
    b.dt_dt = (tmap_(pp.t, pp.x) - tmap_(pm.t, pm.x)) / (2 * h);
    Vec dx = (xmap_(pp.t, pp.x) - xmap_(pm.t, pm.x)) / (2 * h);
    b.dx_dt = dx;
  }
  for (int c = 0; c < d_; ++c) {
    Vec xp = p.x, xm = p.x;
    xp[c] += h;
    xm[c] -= h;
    b.dt_dx[c] = (tmap_(p.t, xp) - tmap_(p.t, xm)) / (2 * h);
    Vec dxc = (xmap_(p.t, xp) - xmap_(p.t, xm)) / (2 * h);
    for (int a = 0; a < d_; ++a) b.dx_dx(a, c) = dxc[a];
  }
  if (!std::isfinite(b.dt_dt) || !b.dt_dx.allFinite() ||
      !b.dx_dt.allFinite() || !b.dx_dx.allFinite())
    throw std::domain_error("DiffeoMap: non-finite derivative");
  return b;
}

const DiffeoMap& DiffeoMap::inverse() const {
  if (!inverse_) throw std::domain_error("DiffeoMap: inverse map unavailable");
  return *inverse_;
}

void DiffeoMap::set_inverse(DiffeoMap inv) {
  inverse_ = std::make_shared<DiffeoMap>(std::move(inv));
}

JacobianBlocks invert_jacobian_blocks(const JacobianBlocks& b) {
  const int d = b.dim();
  const double alpha = b.dt_dt;
  if (std::abs(alpha) < 1e-300)
    throw std::domain_error("invert_jacobian_blocks: dt'/dt vanishes");
  // Y = (dx'/dx - dx'/dt dt'/dx / alpha)^{-1} by Sherman-Morrison on the
  // spatial block.
  Eigen::FullPivLU<Mat> lu(b.dx_dx);
  if (!lu.isInvertible())
    throw std::domain_error("invert_jacobian_blocks: singular spatial block");
  Mat Ainv = lu.inverse();
  Vec Au = Ainv * b.dx_dt;                    // A^{-1} u
  double denom = alpha - b.dt_dx.dot(Au);     // alpha - v^T A^{-1} u
  if (std::abs(denom) < 1e-14 * std::max(1.0, std::abs(alpha)))
    throw std::domain_error(
        "invert_jacobian_blocks: vanishing Sherman-Morrison denominator");
  Vec vA = Ainv.transpose() * b.dt_dx;        // A^{-T} v
  Mat Y = Ainv + (Au * vA.transpose()) / denom;

  JacobianBlocks inv;
  inv.dx_dx = Y;
  inv.dx_dt = -(Y * b.dx_dt) / alpha;
  inv.dt_dx = -(Y.transpose() * b.dt_dx) / alpha;
  inv.dt_dt =
      1.0 / alpha + b.dt_dx.dot(Y * b.dx_dt) / (alpha * alpha);
  (void)d;
  return inv;
}

DiffeoMap compose_diffeos(const DiffeoMap& first, const DiffeoMap& second) {
  if (first.dim() != second.dim())
    throw std::invalid_argument("compose_diffeos: dimension mismatch");
  const int d = first.dim();
  DiffeoMap f = first, s = second;  // captured by value
  DiffeoMap::JacFn jac;
  if (first.analytic_jacobian() && second.analytic_jacobian()) {
    jac = [f, s, d](double t, const Vec& x) {
      Point p{t, x};
      JacobianBlocks J1 = f.jacobian(p);
      Point q = f.map(p);
      JacobianBlocks J2 = s.jacobian(q);
      JacobianBlocks J;
      J.dt_dt = J2.dt_dt * J1.dt_dt + J2.dt_dx.dot(J1.dx_dt);
      J.dx_dt = J2.dx_dt * J1.dt_dt + J2.dx_dx * J1.dx_dt;
      J.dt_dx = J1.dt_dx * J2.dt_dt + J1.dx_dx.transpose() * J2.dt_dx;
      J.dx_dx = Mat(J2.dx_dt * J1.dt_dx.transpose() + J2.dx_dx * J1.dx_dx);
      (void)d;
      return J;
    };
  }
  DiffeoMap out(
      d,
      [f, s](double t, const Vec& x) { return s.map(f.map({t, x})).t; },
      [f, s](double t, const Vec& x) { return s.map(f.map({t, x})).x; },
      jac);
  if (first.has_inverse() && second.has_inverse())
    out.set_inverse(compose_diffeos(second.inverse(), first.inverse()));
  return out;
}

DiffeoMap identity_map(int d) {
  DiffeoMap m(
      d, [](double t, const Vec&) { return t; },
      [](double, const Vec& x) { return x; },
      [d](double, const Vec&) { return JacobianBlocks::identity(d); });
  DiffeoMap inv(
      d, [](double t, const Vec&) { return t; },
      [](double, const Vec& x) { return x; },
      [d](double, const Vec&) { return JacobianBlocks::identity(d); });
  m.set_inverse(std::move(inv));
  return m;
}

DiffeoMap time_reparam_map(int d, std::function<double(double)> f,
                           std::function<double(double)> fprime,
                           std::function<double(double)> finv) {
  auto jac = [d, fprime](double t, const Vec&) {
    JacobianBlocks b = JacobianBlocks::identity(d);
    b.dt_dt = fprime(t);
    return b;
  };
  DiffeoMap m(
      d, [f](double t, const Vec&) { return f(t); },
      [](double, const Vec& x) { return x; }, jac);
  if (finv) {
    auto inv_jac = [d, fprime, finv](double tp, const Vec&) {
      JacobianBlocks b = JacobianBlocks::identity(d);
      b.dt_dt = 1.0 / fprime(finv(tp));
      return b;
    };
    DiffeoMap inv(
        d, [finv](double tp, const Vec&) { return finv(tp); },
        [](double, const Vec& x) { return x; }, inv_jac);
    m.set_inverse(std::move(inv));
  }
  return m;
}

DiffeoMap boost_map(int d, double v) {
  if (std::abs(v) >= 1.0)
    throw std::invalid_argument("boost_map: |v| must be < 1");
  const double gamma = 1.0 / std::sqrt(1.0 - v * v);
  auto make = [d, gamma](double vv) {
    auto jac = [d, gamma, vv](double, const Vec&) {
      JacobianBlocks b = JacobianBlocks::identity(d);
      b.dt_dt = gamma;
      b.dt_dx[0] = -gamma * vv;
      b.dx_dt[0] = -gamma * vv;
      b.dx_dx(0, 0) = gamma;
      return b;
    };
    return DiffeoMap(
        d,
        [gamma, vv](double t, const Vec& x) { return gamma * (t - vv * x[0]); },
        [gamma, vv](double t, const Vec& x) {
          Vec y = x;
          y[0] = gamma * (x[0] - vv * t);
          return y;
        },
        jac);
  };
  DiffeoMap m = make(v);
  m.set_inverse(make(-v));
  return m;
}

DiffeoMap shear_map(int d, double lambda, int k, double period) {
  const double w = 2.0 * std::numbers::pi * k / period;
  auto jac = [d, lambda, w](double, const Vec& x) {
    JacobianBlocks b = JacobianBlocks::identity(d);
    b.dt_dx[0] = lambda * w * std::cos(w * x[0]);
    return b;
  };
  DiffeoMap m(
      d,
      [lambda, w](double t, const Vec& x) {
        return t + lambda * std::sin(w * x[0]);
      },
      [](double, const Vec& x) { return x; }, jac);
  auto inv_jac = [d, lambda, w](double, const Vec& x) {
    JacobianBlocks b = JacobianBlocks::identity(d);
    b.dt_dx[0] = -lambda * w * std::cos(w * x[0]);
    return b;
  };
  DiffeoMap inv(
      d,
      [lambda, w](double t, const Vec& x) {
        return t - lambda * std::sin(w * x[0]);
      },
      [](double, const Vec& x) { return x; }, inv_jac);
  m.set_inverse(std::move(inv));
  return m;
}

DiffeoMap spatial_flow_map(int d, double lambda, int k, double period_t) {
  const double w = 2.0 * std::numbers::pi * k / period_t;
  auto jac = [d, lambda, w](double t, const Vec&) {
    JacobianBlocks b = JacobianBlocks::identity(d);
    b.dx_dt[0] = lambda * w * std::cos(w * t);
    return b;
  };
  DiffeoMap m(
      d, [](double t, const Vec&) { return t; },
      [lambda, w](double t, const Vec& x) {
        Vec y = x;
        y[0] += lambda * std::sin(w * t);
        return y;
      },
      jac);
  auto inv_jac = [d, lambda, w](double t, const Vec&) {
    JacobianBlocks b = JacobianBlocks::identity(d);
    b.dx_dt[0] = -lambda * w * std::cos(w * t);
    return b;
  };
  DiffeoMap inv(
      d, [](double t, const Vec&) { return t; },
      [lambda, w](double t, const Vec& x) {
        Vec y = x;
        y[0] -= lambda * std::sin(w * t);
        return y;
      },
      inv_jac);
  m.set_inverse(std::move(inv));
  return m;
}

DiffeoMap parse_map_spec(const std::string& spec, int d, double extent_t,
                         double extent_x) {
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) args.push_back(std::stod(tok));
  }
  if (name == "identity") return identity_map(d);
  if (name == "boost") {
    if (args.size() != 1) throw std::invalid_argument("boost needs 1 arg");
    return boost_map(d, args[0]);
  }
  if (name == "shear") {
    if (args.empty()) throw std::invalid_argument("shear needs args");
    int k = args.size() > 1 ? static_cast<int>(args[1]) : 1;
    return shear_map(d, args[0], k, extent_x);
  }
  if (name == "flow") {
    if (args.empty()) throw std::invalid_argument("flow needs args");
    int k = args.size() > 1 ? static_cast<int>(args[1]) : 1;
    return spatial_flow_map(d, args[0], k, extent_t);
  }
  if (name == "tscale") {
    if (args.size() != 1) throw std::invalid_argument("tscale needs 1 arg");
    double a = args[0];
    return time_reparam_map(
        d, [a](double t) { return a * t; }, [a](double) { return a; },
        [a](double tp) { return tp / a; });
  }
  throw std::invalid_argument("unknown map spec: " + spec);
}

}  // namespace lapsewick

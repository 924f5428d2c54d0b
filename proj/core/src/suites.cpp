#include "lapsewick/suites.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lapsewick/backgrounds.hpp"
#include "lapsewick/gauge.hpp"
#include "lapsewick/hessian.hpp"
#include "lapsewick/metric.hpp"
#include "lapsewick/scalar_action.hpp"
#include "lapsewick/spectral.hpp"
#include "lapsewick/tensor_components.hpp"
#include "lapsewick/wick.hpp"

namespace lapsewick {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(4) << x;
  return os.str();
}

Background make_background(const SuiteConfig& cfg, Signature sig) {
  if (cfg.background == "flat") return flat_background(cfg.dim, sig);
  if (cfg.background == "curved")
    return curved_background(cfg.dim, sig, cfg.extent_t, cfg.extent_x, 0.08,
                             cfg.seed);
  throw std::runtime_error("unknown background: " + cfg.background);
}

Grid make_grid(const SuiteConfig& cfg) {
  return Grid(cfg.dim, cfg.nt, cfg.nx, cfg.extent_t, cfg.extent_x);
}

std::vector<std::string> map_specs(const SuiteConfig& cfg) {
  if (!cfg.maps.empty()) return cfg.maps;
  return {"boost:0.3", "shear:0.05,1"};
}

std::vector<double> theta_list(const SuiteConfig& cfg,
                               std::vector<double> defaults) {
  if (!cfg.thetas.empty()) return cfg.thetas;
  return defaults;
}

/// Band-limited random scalar on the periodic box (modes |j|,|k| <= 2).
Field<double> random_scalar(const Grid& g, std::mt19937_64& rng,
                            double amp) {
  std::uniform_real_distribution<double> coef(-amp, amp);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
  struct Mode {
    double a, phase;
    int j;
    std::array<int, 3> k;
  };
  std::vector<Mode> modes;
  const int d = g.dim();
  for (int m = 0; m < 5; ++m) {
    Mode md;
    md.a = coef(rng);
    md.phase = ph(rng);
    std::uniform_int_distribution<int> wav(-2, 2);
    md.j = wav(rng);
    for (int a = 0; a < 3; ++a) md.k[a] = a < d ? wav(rng) : 0;
    modes.push_back(md);
  }
  const double wt = 2.0 * kPi / g.extent_t();
  const double wx = 2.0 * kPi / g.extent_x();
  return sample_field<double>(g, [=](double t, const Vec& x) {
    double v = 0.0;
    for (const Mode& md : modes) {
      double arg = md.phase + md.j * wt * t;
      for (int a = 0; a < x.size(); ++a) arg += md.k[a] * wx * x[a];
      v += md.a * std::cos(arg);
    }
    return v;
  });
}

Field<cplx> random_complex_scalar(const Grid& g, std::mt19937_64& rng,
                                  double amp) {
  Field<double> re = random_scalar(g, rng, amp);
  Field<cplx> out(g);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = re[i];
  return out;
}

/// Least-squares slope of log|err| against log(theta).
double loglog_slope(const std::vector<double>& th,
                    const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(th.size());
  for (std::size_t j = 0; j < th.size(); ++j) {
    double lx = std::log(th[j]), ly = std::log(err[j]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void run_covariance(const SuiteConfig& cfg, VerificationReport& rep) {
  Grid g = make_grid(cfg);
  Background bg = make_background(cfg, Signature::Lorentzian);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double eps = sig_value(bg.sig);

  for (const std::string& spec : map_specs(cfg)) {
    DiffeoMap dmap = parse_map_spec(spec, cfg.dim, cfg.extent_t, cfg.extent_x);
    for (double theta : theta_list(cfg, {0.3, kPi / 2.0, 2.5})) {
      const cplx phase = std::polar(1.0, -theta);
      double res_line = 0.0, res_rank = 0.0, res_rank_inv = 0.0;
      double res_pair = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        Point p = g.point(i);
        TripleValue tv = bg.at(p.t, p.x);
        TripleValue tvth = tv;
        tvth.lapse *= phase;
        JacobianBlocks fwd = dmap.jacobian(p);
        JacobianBlocks inv = invert_jacobian_blocks(fwd);

        // Pullback of the transformed line element equals the fiducial one.
        StMat g_fid = metric_value(tvth, Signature::Lorentzian);
        TripleValue tvp =
            transform_value(tvth, -tvth.lapse * tvth.lapse, fwd, inv);
        StMat g_pr = metric_value(tvp, Signature::Lorentzian);
        Eigen::MatrixXcd jac = fwd.full().cast<cplx>();
        StMat pull = jac.transpose() * g_pr * jac;
        res_line = std::max(res_line, (g_fid - pull).cwiseAbs().maxCoeff());

        res_rank = std::max(
            res_rank, rank_one_metric_residual(tv, eps, theta, fwd, inv));
        res_rank_inv = std::max(
            res_rank_inv, rank_one_inverse_residual(tv, eps, theta, fwd, inv));

        // Frame pairing of random components is chart independent.
        CovectorComponents cov;
        VectorComponents vec;
        cov.v = cplx(unit(rng), unit(rng));
        vec.v = cplx(unit(rng), unit(rng));
        cov.v_a.resize(cfg.dim);
        vec.v_a.resize(cfg.dim);
        for (int a = 0; a < cfg.dim; ++a) {
          cov.v_a[a] = cplx(unit(rng), unit(rng));
          vec.v_a[a] = cplx(unit(rng), unit(rng));
        }
        cplx before = frame_pairing(eps, cov, vec);
        cplx after = frame_pairing(eps, transform_covector(cov, tv, eps, fwd, inv),
                                   transform_vector(vec, tv, eps, fwd, inv));
        res_pair = std::max(res_pair, std::abs(after - before));
      }
      std::string tag = " theta=" + fmt(theta) + " map=" + spec;
      rep.add("line-element invariance" + tag, "covariance/line-element",
              res_line, cfg.tolerance("covariance", 1e-10));
      rep.add("rank-one reassembly" + tag, "covariance/rank-one", res_rank,
              cfg.tolerance("rank_one", 1e-11));
      rep.add("rank-one inverse reassembly" + tag, "covariance/rank-one-inverse",
              res_rank_inv, cfg.tolerance("rank_one", 1e-11));
      rep.add("frame pairing invariance" + tag, "covariance/pairing", res_pair,
              cfg.tolerance("pairing", 1e-10));
    }
  }
}

void run_admissibility(const SuiteConfig& cfg, VerificationReport& rep) {
  Grid g = make_grid(cfg);
  Background bg = make_background(cfg, Signature::Lorentzian);
  AdmTriple tri_minus = sample_triple(bg, g);
  AdmTriple tri_plus = tri_minus;
  tri_plus.set_signature(Signature::Euclidean);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uth(0.05, kPi - 0.05);
  std::uniform_real_distribution<double> um2(0.0, 2.0);
  std::uniform_real_distribution<double> ulam(0.0, 1.0);

  double dec_res = 0.0, wec_res = 0.0;
  double im_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100; ++k) {
    Field<double> phi = random_scalar(g, rng, 0.4);
    Potential U = quartic_potential(um2(rng), ulam(rng));
    double theta = uth(rng);
    cplx sm = evaluate_action(tri_minus, phi, U);
    cplx sp = evaluate_action(tri_plus, phi, U);
    cplx st =
        evaluate_action(wick_rotate_fiducial(tri_minus, theta), phi, U);
    cplx split = std::cos(theta) * sm + cplx(0.0, 1.0) * std::sin(theta) * sp;
    dec_res = std::max(dec_res, std::abs(st - split) / std::abs(st));
    im_min = std::min(im_min, st.imag());

    Field<double> em = energy_momentum_bitransversal(tri_minus, phi, U);
    for (std::size_t i = 0; i < em.size(); ++i)
      wec_res = std::max(wec_res, -em[i]);
  }
  rep.add("action split into signature parts", "admissibility/decomposition",
          dec_res, cfg.tolerance("action_decomposition", 1e-12));
  rep.add_flag("Im S_theta > 0 on 100 draws", "admissibility/damping",
               im_min > 0.0);
  rep.add("energy density nonnegativity", "admissibility/energy-density",
          wec_res, cfg.tolerance("energy_density", 1e-14));

  // Small-theta limit: (S_theta - S_minus)/(i theta) -> S_plus linearly.
  {
    Field<double> phi = random_scalar(g, rng, 0.4);
    Potential U = quartic_potential(1.0, 0.5);
    cplx sm = evaluate_action(tri_minus, phi, U);
    cplx sp = evaluate_action(tri_plus, phi, U);
    std::vector<double> th = {1e-2, 1e-3, 1e-4, 1e-5}, err;
    for (double theta : th) {
      cplx st =
          evaluate_action(wick_rotate_fiducial(tri_minus, theta), phi, U);
      err.push_back(std::abs((st - sm) / (cplx(0.0, 1.0) * theta) - sp));
    }
    double slope = loglog_slope(th, err);
    rep.add("small-angle energy limit slope", "admissibility/wec-limit",
            std::abs(slope - 1.0), cfg.tolerance("wec_slope", 0.1));
  }

  // Two-chart scalar gradient combinations, exact chain-rule derivatives.
  {
    const double wt = 2.0 * kPi / cfg.extent_t;
    const double wx = 2.0 * kPi / cfg.extent_x;
    ScalarFn phi = [=](double t, const Vec& x) {
      return 0.3 * std::cos(wt * t + wx * x[0]) + 0.2 * std::sin(2.0 * wx * x[0]);
    };
    ScalarGradFn grad = [=](double t, const Vec& x) {
      StVecR gvec(static_cast<int>(x.size()) + 1);
      gvec.setZero();
      gvec[0] = -0.3 * wt * std::sin(wt * t + wx * x[0]);
      gvec[1] = -0.3 * wx * std::sin(wt * t + wx * x[0]) +
                0.4 * wx * std::cos(2.0 * wx * x[0]);
      return gvec;
    };
    Grid gs(cfg.dim, 8, 8, cfg.extent_t, cfg.extent_x);
    for (const std::string& spec : map_specs(cfg)) {
      DiffeoMap dmap =
          parse_map_spec(spec, cfg.dim, cfg.extent_t, cfg.extent_x);
      TwoChartReport sum = gradient_combination_transform(
          bg, phi, dmap, gs, 1e-3, GradientCombination::Sum, &grad);
      TwoChartReport dif = gradient_combination_transform(
          bg, phi, dmap, gs, 1e-3, GradientCombination::Difference, &grad);
      rep.add("gradient sum combination map=" + spec,
              "admissibility/gradient-sum", sum.max_residual,
              cfg.tolerance("gradient_sum", 1e-10));
      rep.add("gradient difference combination map=" + spec,
              "admissibility/gradient-difference", dif.max_residual,
              cfg.tolerance("gradient_difference", 1e-10));
    }
  }

  // Two-chart Lagrangian scalarity: stencil residual falls off as h^2.
  {
    const double wt = 2.0 * kPi / cfg.extent_t;
    const double wx = 2.0 * kPi / cfg.extent_x;
    ScalarFn phi = [=](double t, const Vec& x) {
      return 0.3 * std::cos(wt * t - wx * x[0]) + 0.1 * std::cos(wx * x[0]);
    };
    Potential U = quadratic_potential(1.0);
    DiffeoMap dmap = parse_map_spec(map_specs(cfg).front(), cfg.dim,
                                    cfg.extent_t, cfg.extent_x);
    const double theta = kPi / 5.0;
    std::vector<double> rs, hs;
    double split_res = 0.0;
    for (int n : {8, 16, 32}) {
      Grid gn(cfg.dim, n, n, cfg.extent_t, cfg.extent_x);
      double h = std::min(gn.ht(), gn.hx());
      LagrangianScalarReport lr =
          lagrangian_scalar_residual(bg, phi, U, dmap, theta, gn, h);
      rs.push_back(lr.scalar_residual);
      split_res = std::max(split_res, lr.decomposition_residual);
      hs.push_back(h);
    }
    double order = loglog_slope(hs, rs);
    rep.add("Lagrangian scalarity stencil order", "admissibility/scalarity",
            std::abs(order - 2.0), cfg.tolerance("scalarity_order", 0.3));
    // The angle split holds exactly for the sampled data, not just O(h^2).
    rep.add("Lagrangian angle split", "admissibility/scalarity-split",
            split_res, cfg.tolerance("scalarity_split", 1e-12));
  }
}

void run_spectrum(const SuiteConfig& cfg, VerificationReport& rep) {
  Grid g = make_grid(cfg);
  if (g.size() > 4000)
    throw std::runtime_error("spectrum suite: grid exceeds 4000 points");
  std::mt19937_64 rng(cfg.seed);

  struct Case {
    std::string label;
    AdmTriple triple;
    Field<double> pot;
  };
  std::vector<Case> cases;
  {
    Background flat = flat_background(cfg.dim, Signature::Lorentzian);
    cases.push_back({"flat", sample_triple(flat, g), Field<double>(g, 1.0)});
    Background curved = curved_background(cfg.dim, Signature::Lorentzian,
                                          cfg.extent_t, cfg.extent_x, 0.08,
                                          cfg.seed);
    const double wt = 2.0 * kPi / cfg.extent_t;
    const double wx = 2.0 * kPi / cfg.extent_x;
    Field<double> pot = sample_field<double>(g, [=](double t, const Vec& x) {
      return 1.0 + 0.3 * std::cos(wt * t) * std::cos(wx * x[0]);
    });
    cases.push_back({"curved", sample_triple(curved, g), pot});
  }

  bool wrote_spectrum = false;
  for (const Case& c : cases) {
    for (double theta : theta_list(cfg, {0.4, 1.2, 2.6})) {
      HessianOperator op = assemble_hessian(c.triple, c.pot, theta);
      HessianOperator opr = assemble_hessian(c.triple, c.pot, kPi - theta);
      std::string tag = " " + c.label + " theta=" + fmt(theta);

      rep.add("weighted self-adjointness" + tag, "spectrum/self-adjoint",
              op.self_adjoint_residual(),
              cfg.tolerance("self_adjoint", 1e-12));

      SpectralReport sr = spectral_report(op);
      rep.add("eigenvalue wedge margin" + tag, "spectrum/wedge",
              std::max(0.0, -sr.wedge_margin), cfg.tolerance("wedge", 1e-10));
      rep.add_flag("no wedge violations" + tag, "spectrum/wedge-count",
                   sr.violations == 0);

      rep.add("reflected adjoint identity" + tag, "spectrum/adjoint",
              adjoint_residual(op, opr, 64, cfg.seed),
              cfg.tolerance("adjoint", 1e-12));

      // Numerical range: |<f, D_- f>| <= <f, D_+ f> for random vectors.
      std::normal_distribution<double> gauss(0.0, 1.0);
      double nr_res = 0.0;
      const int nvec = 1000;
      for (int k = 0; k < nvec; ++k) {
        Eigen::VectorXcd f(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
          f[static_cast<Eigen::Index>(i)] = cplx(gauss(rng), gauss(rng));
        cplx a = weighted_inner(op, f, op.apply_dplus(f));
        cplx b = weighted_inner(op, f, op.apply_dminus(f));
        double scale = std::max(1.0, std::abs(a));
        nr_res = std::max(nr_res, (std::abs(b) - a.real()) / scale);
      }
      rep.add("numerical range wedge bound" + tag, "spectrum/numerical-range",
              std::max(0.0, nr_res), cfg.tolerance("numerical_range", 1e-12));

      if (!cfg.out_dir.empty() && !wrote_spectrum) {
        std::filesystem::create_directories(cfg.out_dir);
        std::ofstream js(cfg.out_dir + "/spectral_report.json");
        js << to_json(sr) << "\n";
        std::ofstream cs(cfg.out_dir + "/spectrum.csv");
        cs << "re,im\n" << std::setprecision(17);
        for (const cplx& ev : sr.eigenvalues)
          cs << ev.real() << "," << ev.imag() << "\n";
        if (!js || !cs)
          throw std::runtime_error("spectrum suite: cannot write artifacts");
        wrote_spectrum = true;
      }
    }
  }
}

void run_algebra(const SuiteConfig& cfg, VerificationReport& rep) {
  // Fourier derivatives act on rational functions of the background
  // fields, so the grid must resolve their harmonic tails below the
  // closure tolerance; 48 points per axis suffices for the defaults.
  Grid g(cfg.dim, std::max(cfg.nt, 48), std::max(cfg.nx, 48), cfg.extent_t,
         cfg.extent_x);
  Background bg = curved_background(cfg.dim, Signature::Lorentzian,
                                    cfg.extent_t, cfg.extent_x, 0.08,
                                    cfg.seed);
  AdmTriple tri = sample_triple(bg, g);
  AdmTriple tri_rot = wick_rotate_fiducial(tri, 0.7);
  std::mt19937_64 rng(cfg.seed);
  Field<double> phi = random_scalar(g, rng, 0.3);

  auto random_descriptor = [&]() {
    Descriptor d{random_complex_scalar(g, rng, 0.25), {}};
    for (int a = 0; a < cfg.dim; ++a)
      d.eps.push_back(random_complex_scalar(g, rng, 0.25));
    return d;
  };

  const double s = 0.005;
  double plain_res = 0.0, rot_res = 0.0;
  for (int k = 0; k < 10; ++k) {
    Descriptor d1 = random_descriptor();
    Descriptor d2 = random_descriptor();
    const Field<double>* ph = (k % 2 == 0) ? &phi : nullptr;
    plain_res =
        std::max(plain_res, commutator_structure_check(tri, d1, d2, s, ph));
    rot_res = std::max(
        rot_res, commutator_structure_check(tri_rot, rotate_descriptor(d1, 0.7),
                                            rotate_descriptor(d2, 0.7), s, ph));
  }
  rep.add("deformation algebra closure", "algebra/plain", plain_res,
          cfg.tolerance("algebra", 1e-6));
  rep.add("rotated deformation algebra closure", "algebra/rotated", rot_res,
          cfg.tolerance("algebra", 1e-6));
}

void run_backgrounds(const SuiteConfig& cfg, VerificationReport& rep) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> up(-5.0, 5.0);
  std::uniform_real_distribution<double> um(0.0, 3.0);
  std::uniform_real_distribution<double> uth(0.02, kPi - 0.02);

  auto draw_point = [&]() {
    MomentumPoint pt;
    pt.p0 = up(rng);
    pt.p.resize(cfg.dim);
    for (int a = 0; a < cfg.dim; ++a) pt.p[a] = up(rng);
    pt.m = um(rng);
    return pt;
  };

  // theta = pi/2 reproduces the real Euclidean propagator exactly.
  double eu_res = 0.0;
  for (int k = 0; k < 100; ++k) {
    MomentumPoint pt = draw_point();
    cplx gth = minkowski_propagator(pt, kPi / 2.0);
    double denom = pt.p_euclid_sq() + pt.m * pt.m;
    eu_res = std::max(eu_res, std::abs(gth - 1.0 / denom) * denom);
  }
  rep.add("Euclidean propagator limit", "backgrounds/propagator-euclid",
          eu_res, cfg.tolerance("propagator_euclid", 1e-14));

  // Two-sided modulus bounds on 10^4 random samples.
  double bound_res = 0.0;
  for (int k = 0; k < 10000; ++k) {
    MomentumPoint pt = draw_point();
    double theta = uth(rng);
    double denom = pt.p_euclid_sq() + pt.m * pt.m;
    if (denom < 1e-8) continue;
    double mag = std::abs(minkowski_propagator(pt, theta)) * denom;
    bound_res = std::max(bound_res, 1.0 - mag);
    bound_res = std::max(bound_res, mag - 1.0 / std::sin(theta));
  }
  rep.add("propagator modulus bounds", "backgrounds/propagator-bounds",
          std::max(0.0, bound_res), cfg.tolerance("propagator_bounds", 1e-12));

  // Small theta matches the damped-denominator form to O(theta).
  {
    const double theta = 1e-3;
    double res = 0.0;
    for (int k = 0; k < 100; ++k) {
      MomentumPoint pt = draw_point();
      cplx gth = minkowski_propagator(pt, theta);
      cplx damped =
          cplx(0.0, 1.0) / (pt.p0 * pt.p0 - pt.p_sq() - pt.m * pt.m +
                            cplx(0.0, 2.0 * theta) * (pt.p_sq() + pt.m * pt.m));
      res = std::max(res, std::abs(gth - damped) / std::abs(damped));
    }
    rep.add("small-angle damped propagator", "backgrounds/propagator-small",
            res, cfg.tolerance("propagator_small", 10.0 * theta));
  }

  // Cosmological triple: N = 1, a = 1 degenerates to the flat triple.
  {
    Grid g(cfg.dim, 8, 8, cfg.extent_t, cfg.extent_x);
    AdmTriple fr = friedmann_triple([](double) { return 1.0; },
                                    [](double) { return 1.0; }, g,
                                    Signature::Lorentzian);
    AdmTriple fl = sample_triple(flat_background(cfg.dim, Signature::Lorentzian), g);
    double res = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      res = std::max(res, std::abs(fr.lapse(i) - fl.lapse(i)));
      res = std::max(res, (fr.gamma(i) - fl.gamma(i)).cwiseAbs().maxCoeff());
    }
    rep.add("static cosmology equals flat", "backgrounds/friedmann-flat", res,
            cfg.tolerance("friedmann", 1e-14));

    const double H = 0.5;
    AdmTriple ds = friedmann_triple(
        [](double) { return 1.0; },
        [=](double t) { return std::exp(H * t); }, g, Signature::Lorentzian);
    ComplexMetricField m = reconstruct_metric(ds);
    double res2 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      Point p = g.point(i);
      res2 = std::max(res2, std::abs(m.g[i](0, 0) - cplx(-1.0)));
      res2 = std::max(
          res2, std::abs(m.g[i](1, 1) - std::exp(2.0 * H * p.t)));
    }
    rep.add("exponential cosmology metric", "backgrounds/friedmann-ds", res2,
            cfg.tolerance("friedmann", 1e-12));
  }

  // Symmetry of the two-point invariant under point exchange.
  {
    double res = 0.0;
    std::uniform_real_distribution<double> ux(-0.4, 0.4);
    for (int k = 0; k < 50; ++k) {
      Vec x(2), xp(2);
      for (int a = 0; a < 2; ++a) {
        x[a] = ux(rng);
        xp[a] = ux(rng);
      }
      double t = ux(rng), tp = ux(rng), theta = uth(rng);
      cplx a = ds_embedding_distance(t, x, tp, xp, 1.0, theta);
      cplx b = ds_embedding_distance(tp, xp, t, x, 1.0, theta);
      res = std::max(res, std::abs(a - b));
    }
    rep.add("two-point invariant symmetry", "backgrounds/embedding-symmetry",
            res, cfg.tolerance("embedding", 1e-13));
  }

  // d = 2 heat kernel at theta = pi/2: closed-form hyperbolic 3-space
  // oracle K = H^3 (4 pi tau)^{-3/2} (rho/sinh rho) e^{-tau - rho^2/(4 tau)}.
  {
    DeSitterParams par;
    par.H = 1.0;
    par.d = 2;
    par.theta = kPi / 2.0;
    double res = 0.0;
    for (double s : {0.2, 0.5}) {
      par.s = s;
      double tau = s * par.H * par.H;
      for (double dx : {0.15, 0.4}) {
        Vec x(2), xp(2);
        x << 0.1, -0.05;
        xp << 0.1 + dx, -0.05 + 0.5 * dx;
        double t = 0.12, tp = -0.08;
        cplx k_num = ds_heat_kernel(par, t, x, tp, xp);
        cplx xi = ds_embedding_distance(t, x, tp, xp, par.H, par.theta);
        double rho = std::acosh(xi.real());
        double oracle = std::pow(par.H, 3) *
                        std::pow(4.0 * kPi * tau, -1.5) * (rho / std::sinh(rho)) *
                        std::exp(-tau - rho * rho / (4.0 * tau));
        res = std::max(res, std::abs(k_num - oracle) / std::abs(oracle));
      }
    }
    rep.add("hyperbolic-space kernel oracle", "backgrounds/heat-oracle", res,
            cfg.tolerance("heat_kernel", 1e-6));
  }

  // Heat-equation residual d/ds K = Delta_theta K at interior nodes.
  {
    const double H = 1.0;
    Grid g(2, 26, 26, 0.36, 0.36);
    AdmTriple ds = friedmann_triple(
        [](double) { return 1.0; },
        [=](double t) { return std::exp(H * t); }, g, Signature::Lorentzian);
    Field<double> v0(g, 0.0);
    const double t_src = 0.173, s0 = 3.0, delta = 0.005;
    Vec x_src(2);
    x_src << 0.187, 0.213;
    for (double theta : theta_list(cfg, {0.5, 1.5})) {
      HessianOperator op = assemble_hessian(ds, v0, theta);
      DeSitterParams par{H, 2, theta, s0};
      auto kfield = [&](double s) {
        par.s = s;
        Eigen::VectorXcd k(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
          Point p = g.point(i);
          k[static_cast<Eigen::Index>(i)] =
              ds_heat_kernel(par, p.t, p.x, t_src, x_src);
        }
        return k;
      };
      Eigen::VectorXcd k0 = kfield(s0);
      Eigen::VectorXcd dk = (kfield(s0 + delta) - kfield(s0 - delta)) / (2.0 * delta);
      Eigen::VectorXcd lk = op.apply_delta(k0);
      double kmax = k0.cwiseAbs().maxCoeff();
      double res = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i)
        if (g.is_interior(i, 2))
          res = std::max(res,
                         std::abs(dk[static_cast<Eigen::Index>(i)] -
                                  lk[static_cast<Eigen::Index>(i)]) /
                             kmax);
      rep.add("heat-equation residual theta=" + fmt(theta),
              "backgrounds/heat-equation", res,
              cfg.tolerance("heat_equation", 1e-4));
    }
  }

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream pc(cfg.out_dir + "/propagator.csv");
    pc << "theta,pe,magnitude\n" << std::setprecision(17);
    for (double theta : {0.2, kPi / 2.0, 2.9}) {
      for (int k = 1; k <= 100; ++k) {
        MomentumPoint pt;
        pt.p0 = 0.05 * k;
        pt.p = Vec::Zero(cfg.dim);
        pt.m = 1.0;
        pc << theta << "," << std::sqrt(pt.p_euclid_sq()) << ","
           << std::abs(minkowski_propagator(pt, theta)) << "\n";
      }
    }
    if (!pc) throw std::runtime_error("backgrounds suite: cannot write artifacts");
  }
}

}  // namespace

double SuiteConfig::tolerance(const std::string& name, double fallback) const {
  auto it = tol.find(name);
  return it == tol.end() ? fallback : it->second;
}

SuiteConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  SuiteConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    line.erase(line.begin(),
               std::find_if(line.begin(), line.end(), notspace));
    line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(),
               line.end());
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key=value");
    auto trim = [&](std::string s) {
      s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
      s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
      return s;
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "background") cfg.background = value;
      else if (key == "dim") cfg.dim = std::stoi(value);
      else if (key == "nt") cfg.nt = std::stoi(value);
      else if (key == "nx") cfg.nx = std::stoi(value);
      else if (key == "extent_t") cfg.extent_t = std::stod(value);
      else if (key == "extent_x") cfg.extent_x = std::stod(value);
      else if (key == "theta") {
        std::stringstream ss(value);
        std::string tok;
        cfg.thetas.clear();
        while (std::getline(ss, tok, ',')) cfg.thetas.push_back(std::stod(tok));
      } else if (key == "map") cfg.maps.push_back(value);
      else if (key == "seed") cfg.seed = static_cast<unsigned>(std::stoul(value));
      else if (key == "out") cfg.out_dir = value;
      else if (key == "format") cfg.format = value;
      else if (key.rfind("tol.", 0) == 0)
        cfg.tol[key.substr(4)] = std::stod(value);
      else
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": malformed value for '" + key + "'");
    }
  }
  if (cfg.format != "json" && cfg.format != "csv")
    throw std::runtime_error("config: format must be json or csv");
  return cfg;
}

VerificationReport run_suite(const SuiteConfig& cfg, const std::string& suite) {
  VerificationReport rep;
  rep.suite = suite;
  rep.seed = cfg.seed;
  if (suite == "covariance") run_covariance(cfg, rep);
  else if (suite == "admissibility") run_admissibility(cfg, rep);
  else if (suite == "spectrum") run_spectrum(cfg, rep);
  else if (suite == "algebra") run_algebra(cfg, rep);
  else if (suite == "backgrounds") run_backgrounds(cfg, rep);
  else if (suite == "all") {
    run_covariance(cfg, rep);
    run_admissibility(cfg, rep);
    run_spectrum(cfg, rep);
    run_algebra(cfg, rep);
    run_backgrounds(cfg, rep);
  } else {
    throw std::runtime_error("unknown suite: " + suite);
  }
  return rep;
}

void emit_artifacts(const VerificationReport& rep, const SuiteConfig& cfg) {
  if (cfg.out_dir.empty()) return;
  std::filesystem::create_directories(cfg.out_dir);
  {
    std::ofstream js(cfg.out_dir + "/report.json");
    js << rep.to_json() << "\n";
    if (!js) throw std::runtime_error("cannot write report.json");
  }
  {
    std::ofstream cs(cfg.out_dir + "/residuals.csv");
    cs << rep.to_csv();
    if (!cs) throw std::runtime_error("cannot write residuals.csv");
  }
}

}  // namespace lapsewick

// Acceptance gate for the verification toolkit: ten end-to-end criteria,
// one pass/fail line each, with every tolerance pinned below. Exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lapsewick/hessian.hpp"
#include "lapsewick/spectral.hpp"
#include "lapsewick/suites.hpp"

using namespace lapsewick;

namespace {
constexpr double kPi = 3.14159265358979323846;

int failures = 0;

void line(int n, const std::string& what, bool ok, double residual,
          double tol, double seconds) {
  std::printf("%s criterion %d: %s (residual %.3e vs tol %.1e, %.1f s)\n",
              ok ? "PASS" : "FAIL", n, what.c_str(), residual, tol, seconds);
  if (!ok) ++failures;
}

double max_residual(const VerificationReport& rep, const std::string& id) {
  double r = 0.0;
  for (const CheckRecord& c : rep.records)
    if (c.check_id.rfind(id, 0) == 0) r = std::max(r, c.residual);
  return r;
}

bool all_pass(const VerificationReport& rep, const std::string& id) {
  bool ok = true;
  for (const CheckRecord& c : rep.records)
    if (c.check_id.rfind(id, 0) == 0) ok = ok && c.pass;
  return ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

/// Independent flat-torus oracle for the rotated fluctuation spectrum:
/// per-mode symbols of the forward/backward difference pairs.
std::vector<cplx> flat_symbol_spectrum(const Grid& g, double m2, double theta) {
  std::vector<cplx> out;
  for (int kt = 0; kt < g.nt(); ++kt) {
    double tau = 2.0 * (1.0 - std::cos(2.0 * kPi * kt / g.nt())) /
                 (g.ht() * g.ht());
    for (int kx = 0; kx < g.nx(); ++kx) {
      double sig = 2.0 * (1.0 - std::cos(2.0 * kPi * kx / g.nx())) /
                   (g.hx() * g.hx());
      out.emplace_back(-std::sin(theta) * (tau + sig + m2),
                       -std::cos(theta) * (-tau + sig + m2));
    }
  }
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

int main() {
  SuiteConfig cfg;
  cfg.dim = 1;
  cfg.nt = 16;
  cfg.nx = 32;
  cfg.seed = 42;

  // 1-2: chart covariance and rank-one reassembly on the 16x32 grid.
  {
    SuiteConfig c = cfg;
    c.thetas = {0.3, kPi / 2.0, 2.5};
    c.maps = {"boost:0.3", "shear:0.05,1"};
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep = run_suite(c, "covariance");
    double dt = seconds_since(t0);
    double r1 = max_residual(rep, "covariance/line-element");
    line(1, "line-element covariance under boost and shear", r1 < 1e-10 && dt < 10.0,
         r1, 1e-10, dt);
    double r2 = std::max(max_residual(rep, "covariance/rank-one"),
                         max_residual(rep, "covariance/rank-one-inverse"));
    line(2, "rank-one metric reassembly, both variants", r2 < 1e-11, r2, 1e-11,
         dt);
  }

  // 3-5: action admissibility, the small-angle energy limit, and the
  // two-chart Lagrangian density.
  {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep = run_suite(cfg, "admissibility");
    double dt = seconds_since(t0);
    double r3 = max_residual(rep, "admissibility/decomposition");
    bool damp = all_pass(rep, "admissibility/damping");
    line(3, "action splits into signature parts, upper half plane on 100 draws",
         r3 < 1e-12 && damp, r3, 1e-12, dt);
    double r4 = max_residual(rep, "admissibility/wec-limit");
    line(4, "small-angle energy limit slope within 0.1 of 1", r4 <= 0.1, r4,
         1e-1, dt);
    double r5 = max_residual(rep, "admissibility/scalarity");
    line(5, "two-chart Lagrangian density converges at order 2 +- 0.3",
         r5 <= 0.3, r5, 3e-1, dt);
  }

  // 6: spectrum in the closed wedge, adjoint identity, and the
  // independent flat-torus symbol oracle.
  {
    auto t0 = std::chrono::steady_clock::now();
    SuiteConfig c = cfg;
    c.nt = 16;
    c.nx = 32;  // 512 points <= 4000
    VerificationReport rep = run_suite(c, "spectrum");
    double wedge = max_residual(rep, "spectrum/wedge");
    double adj = max_residual(rep, "spectrum/adjoint") +
                 max_residual(rep, "spectrum/self-adjoint");
    Grid g(1, 16, 32, 1.0, 1.0);
    AdmTriple tri = sample_triple(flat_background(1, Signature::Lorentzian), g);
    double oracle = 0.0;
    for (double theta : {0.4, kPi / 2.0, 2.6}) {
      HessianOperator op = assemble_hessian(tri, Field<double>(g, 1.3), theta);
      std::vector<cplx> got = dense_eigenvalues(op.dense_delta());
      std::sort(got.begin(), got.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
      });
      std::vector<cplx> want = flat_symbol_spectrum(g, 1.3, theta);
      for (std::size_t i = 0; i < got.size(); ++i)
        oracle = std::max(oracle, std::abs(got[i] - want[i]));
    }
    double dt = seconds_since(t0);
    bool ok = wedge < 1e-10 && adj < 1e-12 && oracle < 1e-10 &&
              all_pass(rep, "spectrum/") && dt < 60.0;
    line(6, "eigenvalues in the closed wedge, symbol oracle match", ok,
         std::max(oracle, wedge), 1e-10, dt);
  }

  // 7: surface-deformation algebra closure, plain and rotated.
  {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep = run_suite(cfg, "algebra");
    double dt = seconds_since(t0);
    double r7 = std::max(max_residual(rep, "algebra/plain"),
                         max_residual(rep, "algebra/rotated"));
    line(7, "deformation algebra closes on 10 random pairs, plain and rotated",
         r7 < 1e-6, r7, 1e-6, dt);
  }

  // 8-9: momentum-space Green's function and the cosmological heat kernel.
  {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep = run_suite(cfg, "backgrounds");
    double dt = seconds_since(t0);
    double r8 = std::max({max_residual(rep, "backgrounds/propagator-euclid"),
                          max_residual(rep, "backgrounds/propagator-bounds"),
                          max_residual(rep, "backgrounds/propagator-small")});
    bool ok8 = all_pass(rep, "backgrounds/propagator");
    line(8, "Green's function: Euclidean limit, modulus bounds, small angles",
         ok8, r8, 1e-2, dt);
    double r9o = max_residual(rep, "backgrounds/heat-oracle");
    double r9h = max_residual(rep, "backgrounds/heat-equation");
    bool ok9 = r9o < 1e-6 && r9h < 1e-4 && dt < 120.0;
    line(9, "heat kernel: closed-form oracle and interior heat equation",
         ok9, std::max(r9o, r9h), 1e-4, dt);
  }

  // 10: determinism — two full runs produce byte-identical reports and
  // artifact files.
  {
    auto t0 = std::chrono::steady_clock::now();
    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() / "lapsewick-acceptance";
    fs::remove_all(base);
    std::string json[2];
    for (int r = 0; r < 2; ++r) {
      SuiteConfig c = cfg;
      c.out_dir = (base / ("run" + std::to_string(r))).string();
      VerificationReport rep = run_suite(c, "all");
      emit_artifacts(rep, c);
      json[r] = rep.to_json();
    }
    bool same = json[0] == json[1] && !json[0].empty();
    for (const char* f : {"report.json", "residuals.csv", "spectrum.csv",
                          "spectral_report.json", "propagator.csv"}) {
      std::string a = slurp(base / "run0" / f);
      std::string b = slurp(base / "run1" / f);
      same = same && !a.empty() && a == b;
    }
    fs::remove_all(base);
    double dt = seconds_since(t0);
    line(10, "reruns are byte-identical, reports and artifacts", same,
         same ? 0.0 : 1.0, 0.5, dt);
  }

  return failures == 0 ? 0 : 1;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lapsewick/fields.hpp"
#include "lapsewick/grid.hpp"
#include "lapsewick/report.hpp"
#include "lapsewick/serialize.hpp"
#include "lapsewick/suites.hpp"

using namespace lapsewick;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("grid indexing round-trips and wraps periodically") {
  Grid g(2, 4, 6, 2.0, 3.0);
  CHECK(g.size() == 4u * 6u * 6u);
  CHECK(g.ht() == doctest::Approx(0.5));
  CHECK(g.hx() == doctest::Approx(0.5));
  for (std::size_t i = 0; i < g.size(); ++i) {
    int it;
    std::array<int, 3> ix;
    g.unpack(i, it, ix);
    CHECK(g.index(it, ix) == i);
  }
  std::size_t i0 = g.index(0, {0, 0, 0});
  CHECK(g.neighbor(i0, 0, -1) == g.index(3, {0, 0, 0}));
  CHECK(g.neighbor(i0, 1, -1) == g.index(0, {5, 0, 0}));
  CHECK(g.neighbor(g.neighbor(i0, 2, +3), 2, -3) == i0);
  CHECK(g.cell_volume() == doctest::Approx(0.5 * 0.5 * 0.5));
}

TEST_CASE("interior test respects the wrap seam") {
  Grid g(1, 8, 8, 1.0, 1.0);
  CHECK(g.is_interior(g.index(4, {4, 0, 0}), 2));
  CHECK(!g.is_interior(g.index(0, {4, 0, 0}), 1));
  CHECK(!g.is_interior(g.index(4, {7, 0, 0}), 1));
}

TEST_CASE("Fourier derivative is exact on band-limited data") {
  Grid g(1, 16, 16, 1.0, 2.0);
  auto f = sample_field<double>(g, [](double t, const Vec& x) {
    return std::sin(2.0 * kPi * 3.0 * t) + std::cos(2.0 * kPi * 2.0 * x[0] / 2.0);
  });
  auto exact_t = sample_field<double>(g, [](double t, const Vec&) {
    return 2.0 * kPi * 3.0 * std::cos(2.0 * kPi * 3.0 * t);
  });
  auto exact_x = sample_field<double>(g, [](double, const Vec& x) {
    return -2.0 * kPi * std::sin(2.0 * kPi * x[0]);
  });
  auto dt = spectral_diff(f, 0);
  auto dx = spectral_diff(f, 1);
  double rt = 0.0, rx = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    rt = std::max(rt, std::abs(dt[i] - exact_t[i]));
    rx = std::max(rx, std::abs(dx[i] - exact_x[i]));
  }
  CHECK(rt < 1e-12);
  CHECK(rx < 1e-12);
}

TEST_CASE("central difference has order-two accuracy") {
  double r16, r32;
  for (int n : {16, 32}) {
    Grid g(1, n, n, 1.0, 1.0);
    auto f = sample_field<double>(g, [](double t, const Vec&) {
      return std::sin(2.0 * kPi * t);
    });
    auto d = central_diff(f, 0);
    double r = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      Point p = g.point(i);
      r = std::max(r, std::abs(d[i] - 2.0 * kPi * std::cos(2.0 * kPi * p.t)));
    }
    (n == 16 ? r16 : r32) = r;
  }
  CHECK(r16 / r32 > 3.5);
  CHECK(r16 / r32 < 4.5);
}

TEST_CASE("field files round-trip complex and real data") {
  Grid g(1, 4, 5, 1.0, 2.0);
  auto f = sample_field<cplx>(g, [](double t, const Vec& x) {
    return cplx(t + 2.0 * x[0], t - x[0]);
  });
  std::string path = (std::filesystem::temp_directory_path() /
                      "lapsewick_roundtrip.csv").string();
  write_field(path, f);
  Field<cplx> back = read_complex_field(path);
  REQUIRE(back.grid == g);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(std::abs(back[i] - f[i]) == 0.0);

  auto fr = sample_field<double>(g, [](double t, const Vec& x) {
    return 1.0 / 3.0 + t * x[0];
  });
  write_field(path, fr);
  Field<double> backr = read_real_field(path);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(backr[i] == fr[i]);
  std::remove(path.c_str());
}

TEST_CASE("reading a missing file throws") {
  CHECK_THROWS_AS(read_real_field("/nonexistent/lapsewick.csv"),
                  std::runtime_error);
}

TEST_CASE("verification report JSON and CSV are stable") {
  VerificationReport rep;
  rep.suite = "demo";
  rep.seed = 7;
  rep.add("alpha", "demo/alpha", 1e-12, 1e-10);
  rep.add("beta", "demo/beta", 2.0, 1.0);
  rep.add_flag("gamma", "demo/gamma", true);
  CHECK(!rep.all_pass());
  CHECK(rep.records[0].pass);
  CHECK(!rep.records[1].pass);
  std::string j1 = rep.to_json();
  CHECK(j1 == rep.to_json());
  CHECK(j1.find("\"suite\": \"demo\"") != std::string::npos);
  CHECK(rep.to_csv().find("beta,demo/beta") != std::string::npos);
}

TEST_CASE("config parser handles overrides and rejects unknown keys") {
  auto path = (std::filesystem::temp_directory_path() /
               "lapsewick_config.txt").string();
  {
    std::ofstream out(path);
    out << "# comment\n"
        << "dim=1\n"
        << "nt=8\n"
        << "nx = 12\n"
        << "theta=0.3,1.5\n"
        << "map=boost:0.2\n"
        << "map=shear:0.1,1\n"
        << "tol.covariance=1e-9\n"
        << "seed=11\n";
  }
  SuiteConfig cfg = parse_config_file(path);
  CHECK(cfg.nt == 8);
  CHECK(cfg.nx == 12);
  REQUIRE(cfg.thetas.size() == 2);
  CHECK(cfg.thetas[1] == doctest::Approx(1.5));
  REQUIRE(cfg.maps.size() == 2);
  CHECK(cfg.tolerance("covariance", 1e-10) == doctest::Approx(1e-9));
  CHECK(cfg.tolerance("other", 0.5) == doctest::Approx(0.5));
  CHECK(cfg.seed == 11u);
  {
    std::ofstream out(path);
    out << "bogus=1\n";
  }
  CHECK_THROWS_AS(parse_config_file(path), std::runtime_error);
  std::remove(path.c_str());
}

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lapsewick/backgrounds.hpp"
#include "lapsewick/hessian.hpp"
#include "lapsewick/spectral.hpp"
#include "lapsewick/suites.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CliOptions {
  std::string config_path;
  std::string grid;
  int dim = -1;
  std::vector<double> thetas;
  std::vector<std::string> maps;
  std::vector<std::string> tols;
  long long seed = -1;
  std::string out_dir;
  std::string format;
  std::string background;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--config", opt.config_path, "key=value config file");
  cmd->add_option("--grid", opt.grid, "grid size NTxNX");
  cmd->add_option("--dim", opt.dim, "spatial dimension (1..3)");
  cmd->add_option("--theta", opt.thetas, "rotation angles")->delimiter(',');
  cmd->add_option("--map", opt.maps, "chart map spec name:params");
  cmd->add_option("--tol", opt.tols, "tolerance override name=value");
  cmd->add_option("--seed", opt.seed, "random seed");
  cmd->add_option("--out", opt.out_dir, "artifact output directory");
  cmd->add_option("--format", opt.format, "json | csv");
  cmd->add_option("--background", opt.background, "flat | curved");
}

/// Config file first, then command-line flags override.
lapsewick::SuiteConfig resolve_config(const CliOptions& opt) {
  lapsewick::SuiteConfig cfg;
  if (!opt.config_path.empty())
    cfg = lapsewick::parse_config_file(opt.config_path);
  if (!opt.grid.empty()) {
    auto x = opt.grid.find('x');
    if (x == std::string::npos)
      throw std::invalid_argument("--grid expects NTxNX");
    cfg.nt = std::stoi(opt.grid.substr(0, x));
    cfg.nx = std::stoi(opt.grid.substr(x + 1));
    if (cfg.nt < 2 || cfg.nx < 2)
      throw std::invalid_argument("--grid sizes must be at least 2");
  }
  if (opt.dim > 0) cfg.dim = opt.dim;
  if (cfg.dim < 1 || cfg.dim > 3)
    throw std::invalid_argument("dimension must be 1..3");
  if (!opt.thetas.empty()) cfg.thetas = opt.thetas;
  if (!opt.maps.empty()) cfg.maps = opt.maps;
  for (const std::string& t : opt.tols) {
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--tol expects name=value");
    cfg.tol[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
  }
  if (opt.seed >= 0) cfg.seed = static_cast<unsigned>(opt.seed);
  if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
  if (!opt.format.empty()) cfg.format = opt.format;
  if (!opt.background.empty()) cfg.background = opt.background;
  if (cfg.format != "json" && cfg.format != "csv")
    throw std::invalid_argument("format must be json or csv");
  return cfg;
}

int finish_report(const lapsewick::VerificationReport& rep,
                  const lapsewick::SuiteConfig& cfg) {
  lapsewick::emit_artifacts(rep, cfg);
  if (cfg.format == "csv")
    std::cout << rep.to_csv();
  else
    std::cout << rep.to_json() << "\n";
  return rep.all_pass() ? 0 : 1;
}

int run_verify(const CliOptions& opt, const std::string& suite) {
  lapsewick::SuiteConfig cfg = resolve_config(opt);
  return finish_report(lapsewick::run_suite(cfg, suite), cfg);
}

int run_spectrum(const CliOptions& opt) {
  lapsewick::SuiteConfig cfg = resolve_config(opt);
  lapsewick::Grid g(cfg.dim, cfg.nt, cfg.nx, cfg.extent_t, cfg.extent_x);
  if (g.size() > 4000)
    throw std::invalid_argument("spectrum: grid exceeds 4000 points");
  lapsewick::Background bg =
      cfg.background == "flat"
          ? lapsewick::flat_background(cfg.dim, lapsewick::Signature::Lorentzian)
          : lapsewick::curved_background(cfg.dim,
                                         lapsewick::Signature::Lorentzian,
                                         cfg.extent_t, cfg.extent_x, 0.08,
                                         cfg.seed);
  lapsewick::AdmTriple tri = lapsewick::sample_triple(bg, g);
  lapsewick::Field<double> pot(g, 1.0);
  std::vector<double> thetas = cfg.thetas.empty()
                                   ? std::vector<double>{0.4}
                                   : cfg.thetas;
  bool pass = true;
  for (double theta : thetas) {
    lapsewick::HessianOperator op = lapsewick::assemble_hessian(tri, pot, theta);
    lapsewick::SpectralReport sr = lapsewick::spectral_report(op);
    pass = pass && sr.violations == 0;
    if (cfg.format == "csv") {
      std::cout << "re,im\n" << std::setprecision(17);
      for (const lapsewick::cplx& ev : sr.eigenvalues)
        std::cout << ev.real() << "," << ev.imag() << "\n";
    } else {
      std::cout << lapsewick::to_json(sr) << "\n";
    }
    if (!cfg.out_dir.empty()) {
      std::filesystem::create_directories(cfg.out_dir);
      std::ofstream js(cfg.out_dir + "/spectral_report.json");
      js << lapsewick::to_json(sr) << "\n";
      if (!js) throw std::runtime_error("cannot write spectral_report.json");
    }
  }
  return pass ? 0 : 1;
}

int run_propagator(const CliOptions& opt) {
  lapsewick::SuiteConfig cfg = resolve_config(opt);
  std::vector<double> thetas = cfg.thetas.empty()
                                   ? std::vector<double>{0.2, kPi / 2.0}
                                   : cfg.thetas;
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    file.open(cfg.out_dir + "/propagator.csv");
    if (!file) throw std::runtime_error("cannot write propagator.csv");
    os = &file;
  }
  *os << "theta,p0,m,re,im\n" << std::setprecision(17);
  for (double theta : thetas) {
    for (int k = 1; k <= 200; ++k) {
      lapsewick::MomentumPoint pt;
      pt.p0 = 0.05 * k;
      pt.p = lapsewick::Vec::Zero(cfg.dim);
      pt.m = 1.0;
      lapsewick::cplx gv = lapsewick::minkowski_propagator(pt, theta);
      *os << theta << "," << pt.p0 << "," << pt.m << "," << gv.real() << ","
          << gv.imag() << "\n";
    }
  }
  if (!*os) throw std::runtime_error("cannot write propagator output");
  return 0;
}

int run_heatkernel(const CliOptions& opt) {
  lapsewick::SuiteConfig cfg = resolve_config(opt);
  if (cfg.dim > 2)
    throw std::invalid_argument("heatkernel: dimension must be 1 or 2");
  std::vector<double> thetas = cfg.thetas.empty()
                                   ? std::vector<double>{kPi / 2.0}
                                   : cfg.thetas;
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    file.open(cfg.out_dir + "/heatkernel.csv");
    if (!file) throw std::runtime_error("cannot write heatkernel.csv");
    os = &file;
  }
  *os << "theta,s,dx,re,im\n" << std::setprecision(17);
  for (double theta : thetas) {
    lapsewick::DeSitterParams par;
    par.H = 1.0;
    par.d = cfg.dim;
    par.theta = theta;
    for (double s : {0.2, 0.5, 1.0}) {
      par.s = s;
      for (int k = 1; k <= 20; ++k) {
        double dx = 0.05 * k;
        lapsewick::Vec x = lapsewick::Vec::Zero(cfg.dim);
        lapsewick::Vec xp = lapsewick::Vec::Zero(cfg.dim);
        xp[0] = dx;
        lapsewick::cplx kv = lapsewick::ds_heat_kernel(par, 0.1, x, -0.1, xp);
        *os << theta << "," << s << "," << dx << "," << kv.real() << ","
            << kv.imag() << "\n";
      }
    }
  }
  if (!*os) throw std::runtime_error("cannot write heatkernel output");
  return 0;
}

bool looks_like_io_error(const std::exception& e) {
  std::string msg = e.what();
  return msg.rfind("cannot", 0) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for complexified foliated metrics"};
  app.require_subcommand(1);
  CliOptions opt;

  std::string suite = "all";
  CLI::App* verify = app.add_subcommand(
      "verify", "run a verification suite and print its report");
  verify->add_option("suite", suite,
                     "covariance | admissibility | spectrum | algebra | "
                     "backgrounds | all");
  add_common(verify, opt);

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "eigenvalues and wedge statistics of the fluctuation operator");
  add_common(spectrum, opt);

  CLI::App* propagator =
      app.add_subcommand("propagator", "momentum-space propagator sweep");
  add_common(propagator, opt);

  CLI::App* heatkernel =
      app.add_subcommand("heatkernel", "curved-space heat kernel samples");
  add_common(heatkernel, opt);

  CLI::App* report = app.add_subcommand(
      "report", "run every suite and write the combined report");
  add_common(report, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(opt, suite);
    if (spectrum->parsed()) return run_spectrum(opt);
    if (propagator->parsed()) return run_propagator(opt);
    if (heatkernel->parsed()) return run_heatkernel(opt);
    if (report->parsed()) return run_verify(opt, "all");
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    if (looks_like_io_error(e)) {
      std::cerr << "i/o error: " << e.what() << "\n";
      return 3;
    }
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

#pragma once

#include <map>
#include <string>
#include <vector>

#include "lapsewick/report.hpp"

namespace lapsewick {

/// Configuration shared by all verification suites. Tolerances not listed
/// in `tol` fall back to the per-check defaults.
struct SuiteConfig {
  std::string background = "curved";  // flat | curved
  int dim = 1;
  int nt = 16;
  int nx = 32;
  double extent_t = 1.0;
  double extent_x = 1.0;
  std::vector<double> thetas;              // empty -> per-suite defaults
  std::vector<std::string> maps;           // catalog specs; empty -> defaults
  std::map<std::string, double> tol;
  unsigned seed = 42;
  std::string out_dir;                     // empty -> no artifact files
  std::string format = "json";             // json | csv

  double tolerance(const std::string& name, double fallback) const;
};

/// Parses "key=value" lines (# comments allowed) into a config. Throws
/// std::runtime_error on unknown keys or malformed values.
SuiteConfig parse_config_file(const std::string& path);

/// Runs one of: covariance | admissibility | spectrum | algebra |
/// backgrounds | all. Deterministic for a fixed config and seed. Writes
/// suite data files (spectrum.csv, propagator.csv, ...) into out_dir when
/// set.
VerificationReport run_suite(const SuiteConfig& cfg, const std::string& suite);

/// Writes report.json and residuals.csv (and nothing else) into
/// cfg.out_dir. Throws std::runtime_error on I/O failure.
void emit_artifacts(const VerificationReport& rep, const SuiteConfig& cfg);

}  // namespace lapsewick

#pragma once

#include <string>
#include <vector>

namespace lapsewick {

/// One verification check: a stable identifier, the claim it certifies,
/// the measured residual and the tolerance it is held to.
struct CheckRecord {
  std::string name;
  std::string check_id;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  unsigned seed = 0;
  std::vector<CheckRecord> records;

  bool all_pass() const;
  void add(const std::string& name, const std::string& check_id,
           double residual, double tolerance);
  /// Adds a boolean check (residual 0/1 against tolerance 0.5).
  void add_flag(const std::string& name, const std::string& check_id,
                bool ok);

  /// Deterministic JSON: records in insertion order, no timestamps.
  std::string to_json() const;
  /// CSV rows "name,check_id,residual,tolerance,pass".
  std::string to_csv() const;
};

}  // namespace lapsewick

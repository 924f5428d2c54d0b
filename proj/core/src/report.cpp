#include "lapsewick/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace lapsewick {

bool VerificationReport::all_pass() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

void VerificationReport::add(const std::string& name,
                             const std::string& check_id, double residual,
                             double tolerance) {
  records.push_back({name, check_id, residual, tolerance,
                     residual <= tolerance});
}

void VerificationReport::add_flag(const std::string& name,
                                  const std::string& check_id, bool ok) {
  records.push_back({name, check_id, ok ? 0.0 : 1.0, 0.5, ok});
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["pass"] = all_pass();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json c;
    c["name"] = r.name;
    c["check_id"] = r.check_id;
    c["residual"] = r.residual;
    c["tolerance"] = r.tolerance;
    c["pass"] = r.pass;
    j["checks"].push_back(c);
  }
  return j.dump(2);
}

std::string VerificationReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "name,check_id,residual,tolerance,pass\n";
  for (const auto& r : records)
    os << r.name << ',' << r.check_id << ',' << r.residual << ','
       << r.tolerance << ',' << (r.pass ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace lapsewick

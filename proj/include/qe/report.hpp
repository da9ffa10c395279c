#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace qe {

struct Check {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string path;  // "exact" or "numeric"; empty when not applicable
};

struct VerificationReport {
  std::vector<Check> checks;
  nlohmann::json metadata = nlohmann::json::object();

  void add(std::string name, double residual, double tol, std::string path = "");
  /// A failed precondition is a check that cannot pass.
  void fail(std::string name, std::string why);
  bool pass() const;
  const Check* find(const std::string& name) const;
};

nlohmann::json to_json(const VerificationReport& r);

}  // namespace qe

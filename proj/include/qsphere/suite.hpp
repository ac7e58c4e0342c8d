#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsphere/numcheck.hpp"

namespace qsphere {

struct RunConfig {
  std::string subcommand;
  int n = 3;
  std::vector<double> q = {0.3, 0.5, 0.9};
  int trunc = 30;
  int degree_bound = 4;
  std::string format = "text";
  std::string out;
  std::uint64_t seed = 1;
};

struct CheckResult {
  std::string id;
  std::string anchor;
  bool passed = false;
  std::string exact_value;
  std::optional<double> float_value;
  double runtime_ms = 0;
  std::string detail;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  std::vector<ConvergenceRow> tables;
  bool passed() const;
};

// Subcommand names accepted by run_suite.
const std::vector<std::string>& suite_names();
// Throws DomainError on an unknown name or a config outside its guards
// (n > 5, q outside (0,1), K < 1, degree bound < 3).
void validate(const RunConfig& config);
SuiteReport run_suite(const RunConfig& config);

}  // namespace qsphere

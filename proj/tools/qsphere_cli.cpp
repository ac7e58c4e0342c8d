#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "qsphere/errors.hpp"
#include "qsphere/suite.hpp"

using namespace qsphere;

namespace {

constexpr const char* kVersion = "0.1.0";

// Accepts decimals and fractions a/b.
double parse_sample(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return std::stod(text);
  return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
}

nlohmann::json to_json(const RunConfig& cfg, const SuiteReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json j = {{"id", c.id},
                        {"paper_anchor", c.anchor},
                        {"status", c.passed ? "pass" : "fail"},
                        {"exact_value", c.exact_value},
                        {"float_value", c.float_value ? nlohmann::json(*c.float_value) : nlohmann::json(nullptr)},
                        {"runtime_ms", c.runtime_ms}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  nlohmann::json out = {
      {"version", kVersion},
      {"config",
       {{"subcommand", cfg.subcommand},
        {"n", cfg.n},
        {"q", cfg.q},
        {"trunc", cfg.trunc},
        {"degree_bound", cfg.degree_bound},
        {"seed", cfg.seed}}},
      {"checks", std::move(checks)},
  };
  if (!report.tables.empty()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.tables)
      rows.push_back({{"check", r.check}, {"K", r.K}, {"q0", r.q0}, {"value", r.value}, {"abs_error", r.abs_error}});
    out["tables"] = std::move(rows);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string to_csv(const RunConfig& cfg, const SuiteReport& report) {
  if (cfg.subcommand == "numcheck") return qsphere::to_csv(report.tables);
  std::ostringstream out;
  out << std::setprecision(17) << "id,status,exact_value,float_value,runtime_ms\n";
  for (const auto& c : report.checks) {
    out << csv_field(c.id) << ',' << (c.passed ? "pass" : "fail") << ',' << csv_field(c.exact_value) << ',';
    if (c.float_value) out << *c.float_value;
    out << ',' << c.runtime_ms << '\n';
  }
  return out.str();
}

std::string to_text(const SuiteReport& report) {
  std::ostringstream out;
  std::size_t failures = 0;
  for (const auto& c : report.checks) {
    failures += !c.passed;
    out << (c.passed ? "PASS " : "FAIL ") << c.id;
    if (!c.exact_value.empty()) out << "  " << c.exact_value;
    if (c.float_value) out << "  ~ " << std::setprecision(12) << *c.float_value;
    out << "  (" << std::fixed << std::setprecision(1) << c.runtime_ms << " ms)" << std::defaultfloat << '\n';
    if (!c.detail.empty() && !c.passed) out << "     " << c.detail << '\n';
  }
  out << report.checks.size() - failures << "/" << report.checks.size() << " checks passed\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification suites for the quantum 4-sphere bundles and their indices"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::vector<std::string> q_text;
  app.add_option("--n", cfg.n, "Largest degree n (0..5)")->capture_default_str();
  app.add_option("--q", q_text, "Sample values of q in (0,1), decimals or a/b")->delimiter(',');
  app.add_option("--trunc", cfg.trunc, "Truncation level K for numeric checks")->capture_default_str();
  app.add_option("--degree-bound", cfg.degree_bound, "Word length bound for the confluence check")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Write the report to this file instead of stdout");
  app.add_option("--seed", cfg.seed, "Seed for randomized property checks")->capture_default_str();

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify-algebra", "Rewriting confluence and the 4-sphere relations"},
      {"verify-hopf", "Corepresentation matrices and their invariants"},
      {"verify-bundles", "Isometries, covariance, orthogonality and the decomposition"},
      {"chern", "Exact index table"},
      {"k-relations", "K-theory relations, tensor powers and the Euler class"},
      {"classical", "Clifford construction on the classical even spheres"},
      {"numcheck", "Truncated numeric cross-checks and convergence tables"},
      {"all", "Every suite"},
  };
  for (const auto& [name, help] : commands)
    app.add_subcommand(name, help)->callback([&cfg, name = name] { cfg.subcommand = name; });

  try {
    app.parse(argc, argv);
    if (!q_text.empty()) {
      cfg.q.clear();
      for (const auto& t : q_text) cfg.q.push_back(parse_sample(t));
    }
    validate(cfg);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  const SuiteReport report = run_suite(cfg);
  std::string body;
  if (cfg.format == "json")
    body = to_json(cfg, report).dump(2) + "\n";
  else if (cfg.format == "csv")
    body = to_csv(cfg, report);
  else
    body = to_text(report);

  if (cfg.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream file(cfg.out);
    if (!file) {
      std::cerr << "error: cannot write " << cfg.out << '\n';
      return 2;
    }
    file << body;
  }
  return report.passed() ? 0 : 1;
}

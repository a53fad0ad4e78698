#pragma once

// Declarative experiment runner behind the CLI and the C API.

#include <string>
#include <vector>

#include "lqp/forms/form.hpp"

namespace lqp::experiments {

inline constexpr const char* report_schema = "lqp-report/1";

const char* version() noexcept;

struct ExperimentInfo {
  std::string kind;
  /// The statement the suite checks, in words.
  std::string anchor;
  std::string description;
};

/// The nine experiment kinds in a fixed order.
const std::vector<ExperimentInfo>& list_experiments();

struct CsvTable {
  /// File stem, e.g. "ball_ladder".
  std::string name;
  std::string content;
};

/// Exit codes: 0 all asserted checks pass, 1 a check failed, 2 invalid
/// configuration or unmet precondition, 3 numerical non-convergence.
struct RunResult {
  int exit_code = 0;
  /// Deterministic JSON report; no timing information.
  std::string report;
  std::vector<CsvTable> tables;
  /// Report path and CSV prefix requested by the config; empty when absent.
  std::string report_path;
  std::string csv_prefix;
};

/// Parses a JSON config and runs it. Never throws.
RunResult run(const std::string& config_text);

/// Named analytic test forms on the n-ball, n in {2, 3}: a polynomial and a
/// trigonometric form in every degree 1..n, plus extra closed 1-forms in 2-D.
struct CatalogForm {
  std::string name;
  forms::DifferentialForm form;
  bool closed = false;
};
std::vector<CatalogForm> test_form_catalog(int n);

}  // namespace lqp::experiments

#pragma once

#include <climits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "lqp/experiments/experiments.hpp"

namespace lqp::experiments {

using json = nlohmann::ordered_json;

/// JSON-safe number: non-finite values become the strings "inf", "-inf", "nan".
json number(double v);

/// Typed access to one config section; every key read is echoed with its
/// effective value and finish() rejects the rest.
class Params {
 public:
  Params(const json* section, std::string name);

  double real(const std::string& key, double fallback);
  /// Accepts the string "inf".
  double exponent(const std::string& key, double fallback);
  double positive(const std::string& key, double fallback);
  std::optional<double> optional_real(const std::string& key);
  int integer(const std::string& key, int fallback, int min = INT_MIN, int max = INT_MAX);
  std::string choice(const std::string& key, const std::string& fallback,
                     const std::vector<std::string>& allowed);
  std::vector<double> reals(const std::string& key, std::vector<double> fallback);
  std::vector<int> integers(const std::string& key, std::vector<int> fallback, int min = INT_MIN);

  void finish() const;
  const json& echo() const { return echo_; }

 private:
  const json* find(const std::string& key);

  const json* section_;
  std::string name_;
  std::set<std::string> used_;
  json echo_ = json::object();
};

struct Suite {
  Params params;
  Params tolerances;
  unsigned seed = 0;
  json data = json::object();
  json checks = json::array();
  json notes = json::array();
  std::vector<CsvTable> tables;
  bool non_convergence = false;

  /// Records a check. Advisory checks never fail the run.
  void check(const std::string& name, const std::string& operation, const std::string& anchor,
             json value, const std::string& expected, bool pass, bool advisory = false);
  bool any_failed() const;
  /// Rejects unknown keys; call after reading every parameter, before computing.
  void ready() const {
    params.finish();
    tolerances.finish();
  }
};

void run_sobolev(Suite& s);
void run_ball_witness(Suite& s);
void run_hyperbolic_witness(Suite& s);
void run_line_witness(Suite& s);
void run_poincare(Suite& s);
void run_smooth(Suite& s);
void run_pde(Suite& s);
void run_hodge(Suite& s);
void run_complex(Suite& s);

}  // namespace lqp::experiments

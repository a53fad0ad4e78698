#include <fftw3.h>

#include <Eigen/Core>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "lqp/error.hpp"
#include "suite.hpp"

namespace lqp::experiments {

namespace {

[[noreturn]] void config_fail(const std::string& msg) { fail(ErrorCode::config_error, msg); }

std::string camel(ErrorCode code) {
  std::string s = to_string(code), out;
  bool up = true;
  for (char c : s) {
    if (c == '_') {
      up = true;
      continue;
    }
    out += up ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
    up = false;
  }
  return out;
}

using Runner = void (*)(Suite&);

struct Entry {
  ExperimentInfo info;
  Runner runner;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"sobolev-verify", "Sobolev-type inequality for closed forms on compact manifolds",
        "best-constant lower bounds on the circle and torus against the spectral value"},
       run_sobolev},
      {{"ball-witness", "nonvanishing of L_{q,p} cohomology of the ball outside the Sobolev range",
        "alpha = d(r^mu theta) paired with the cut-off family gamma_t"},
       run_ball_witness},
      {{"hyperbolic-witness", "nonvanishing reduced L_{q,p} cohomology of the hyperbolic plane",
        "the horocyclic pair (f, g), its eight properties and tail-corrected norms"},
       run_hyperbolic_witness},
      {{"line-witness", "Sobolev inequality failure and reduced-cohomology approximation on the line",
        "plateau and Gaussian ratios, reduced approximation residuals"},
       run_line_witness},
      {{"poincare", "Poincare lemma with Riesz-kernel norm control on the ball",
        "homotopy identity T d + d T = I and ||T omega||_q against the kernel norm"},
       run_poincare},
      {{"smooth", "de Rham regularization commuting with d",
        "commutation, locality, homotopy identity and convergence of R_eps"},
       run_smooth},
      {{"pde-solve", "existence for the p-Laplace equation on forms under compatibility",
        "energy minimization, weak residuals and compatibility defects"},
       run_pde},
      {{"hodge", "Hodge-Kodaira decomposition and Green operator identities on the flat torus",
        "operator identities, decomposition, harmonic dimensions and Im(delta d) = Im(delta)"},
       run_hodge},
      {{"complex-analyze", "solvability constants and cohomology of finite cochain complexes",
        "SVD and convex-optimization constants against brute force; torus cohomology"},
       run_complex},
  };
  return entries;
}

}  // namespace

const char* version() noexcept { return "0.1.0"; }

const std::vector<ExperimentInfo>& list_experiments() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Params::Params(const json* section, std::string name) : section_(section), name_(std::move(name)) {
  if (section_ && !section_->is_object()) config_fail("'" + name_ + "' must be an object");
}

const json* Params::find(const std::string& key) {
  used_.insert(key);
  if (!section_) return nullptr;
  auto it = section_->find(key);
  return it == section_->end() ? nullptr : &*it;
}

double Params::real(const std::string& key, double fallback) {
  const json* v = find(key);
  double out = fallback;
  if (v) {
    if (!v->is_number()) config_fail(name_ + "." + key + " must be a number");
    out = v->get<double>();
  }
  echo_[key] = number(out);
  return out;
}

double Params::exponent(const std::string& key, double fallback) {
  const json* v = find(key);
  double out = fallback;
  if (v) {
    if (v->is_string() && v->get<std::string>() == "inf") out = std::numeric_limits<double>::infinity();
    else if (v->is_number()) out = v->get<double>();
    else config_fail(name_ + "." + key + " must be a number or \"inf\"");
  }
  if (!(out >= 1.0)) config_fail(name_ + "." + key + " must be an exponent >= 1");
  echo_[key] = number(out);
  return out;
}

double Params::positive(const std::string& key, double fallback) {
  const double v = real(key, fallback);
  if (!(v > 0.0) || !std::isfinite(v)) config_fail(name_ + "." + key + " must be positive");
  return v;
}

std::optional<double> Params::optional_real(const std::string& key) {
  const json* v = find(key);
  if (!v || v->is_null()) {
    echo_[key] = nullptr;
    return std::nullopt;
  }
  if (!v->is_number()) config_fail(name_ + "." + key + " must be a number");
  echo_[key] = v->get<double>();
  return v->get<double>();
}

int Params::integer(const std::string& key, int fallback, int min, int max) {
  const json* v = find(key);
  long long out = fallback;
  if (v) {
    if (!v->is_number_integer()) config_fail(name_ + "." + key + " must be an integer");
    out = v->get<long long>();
  }
  if (out < min || out > max)
    config_fail(name_ + "." + key + " must lie in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
  echo_[key] = out;
  return static_cast<int>(out);
}

std::string Params::choice(const std::string& key, const std::string& fallback,
                           const std::vector<std::string>& allowed) {
  const json* v = find(key);
  std::string out = fallback;
  if (v) {
    if (!v->is_string()) config_fail(name_ + "." + key + " must be a string");
    out = v->get<std::string>();
  }
  if (std::find(allowed.begin(), allowed.end(), out) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    config_fail(name_ + "." + key + " must be one of: " + list);
  }
  echo_[key] = out;
  return out;
}

std::vector<double> Params::reals(const std::string& key, std::vector<double> fallback) {
  const json* v = find(key);
  if (v) {
    if (!v->is_array() || v->empty()) config_fail(name_ + "." + key + " must be a nonempty array");
    fallback.clear();
    for (const auto& x : *v) {
      if (!x.is_number()) config_fail(name_ + "." + key + " must contain numbers");
      fallback.push_back(x.get<double>());
    }
  }
  json arr = json::array();
  for (double x : fallback) arr.push_back(number(x));
  echo_[key] = arr;
  return fallback;
}

std::vector<int> Params::integers(const std::string& key, std::vector<int> fallback, int min) {
  const json* v = find(key);
  if (v) {
    if (!v->is_array() || v->empty()) config_fail(name_ + "." + key + " must be a nonempty array");
    fallback.clear();
    for (const auto& x : *v) {
      if (!x.is_number_integer() || x.get<long long>() < min)
        config_fail(name_ + "." + key + " must contain integers >= " + std::to_string(min));
      fallback.push_back(x.get<int>());
    }
  }
  echo_[key] = fallback;
  return fallback;
}

void Params::finish() const {
  if (!section_) return;
  std::string unknown;
  for (auto it = section_->begin(); it != section_->end(); ++it)
    if (!used_.count(it.key())) unknown += (unknown.empty() ? "" : ", ") + it.key();
  if (!unknown.empty()) config_fail("unknown key(s) in '" + name_ + "': " + unknown);
}

void Suite::check(const std::string& name, const std::string& operation, const std::string& anchor,
                  json value, const std::string& expected, bool pass, bool advisory) {
  json c = json::object();
  c["name"] = name;
  c["operation"] = operation;
  c["anchor"] = anchor;
  c["value"] = std::move(value);
  c["expected"] = expected;
  c["status"] = advisory ? "advisory" : (pass ? "pass" : "fail");
  checks.push_back(std::move(c));
}

bool Suite::any_failed() const {
  return std::any_of(checks.begin(), checks.end(), [](const json& c) { return c["status"] == "fail"; });
}

RunResult run(const std::string& config_text) {
  RunResult result;
  json report = json::object();
  report["schema"] = report_schema;
  report["versions"] = {{"lqp", version()},
                        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                      "." + std::to_string(EIGEN_MINOR_VERSION)},
                        {"fftw", std::string(fftw_version)}};
  json config_echo = json::object();
  json parsed;
  std::optional<Suite> suite;
  int exit_code = 0;
  try {
    try {
      parsed = json::parse(config_text);
    } catch (const json::parse_error& e) {
      config_fail(std::string("config is not valid JSON: ") + e.what());
    }
    if (!parsed.is_object()) config_fail("config must be a JSON object");
    static const std::set<std::string> top = {"kind", "seed", "params", "tolerances", "output"};
    for (auto it = parsed.begin(); it != parsed.end(); ++it)
      if (!top.count(it.key())) config_fail("unknown top-level key: " + it.key());
    if (!parsed.contains("kind") || !parsed["kind"].is_string()) config_fail("'kind' must be a string");
    const std::string kind = parsed["kind"].get<std::string>();
    const auto& entries = registry();
    auto entry = std::find_if(entries.begin(), entries.end(), [&](const Entry& e) { return e.info.kind == kind; });
    if (entry == entries.end()) config_fail("unknown experiment kind: " + kind);
    report["kind"] = kind;
    config_echo["kind"] = kind;

    long long seed = 0;
    if (parsed.contains("seed")) {
      if (!parsed["seed"].is_number_integer() || parsed["seed"].get<long long>() < 0 ||
          parsed["seed"].get<long long>() > 4294967295LL)
        config_fail("'seed' must be an integer in [0, 2^32)");
      seed = parsed["seed"].get<long long>();
    }
    config_echo["seed"] = seed;
    if (parsed.contains("output")) {
      const json& out = parsed["output"];
      if (!out.is_object()) config_fail("'output' must be an object");
      for (auto it = out.begin(); it != out.end(); ++it) {
        if (it.key() != "report" && it.key() != "csv_prefix") config_fail("unknown key in 'output': " + it.key());
        if (!it.value().is_string()) config_fail("output." + it.key() + " must be a string");
      }
      if (out.contains("report")) result.report_path = out["report"].get<std::string>();
      if (out.contains("csv_prefix")) result.csv_prefix = out["csv_prefix"].get<std::string>();
      config_echo["output"] = out;
    }
    const json* params = parsed.contains("params") ? &parsed["params"] : nullptr;
    const json* tols = parsed.contains("tolerances") ? &parsed["tolerances"] : nullptr;
    suite.emplace(Suite{Params(params, "params"), Params(tols, "tolerances"), static_cast<unsigned>(seed)});
    report["anchor"] = entry->info.anchor;
    entry->runner(*suite);
    suite->params.finish();
    suite->tolerances.finish();
    exit_code = suite->non_convergence ? 3 : suite->any_failed() ? 1 : 0;
  } catch (const Error& e) {
    exit_code = e.code() == ErrorCode::non_convergence ? 3 : 2;
    report["error"] = {{"code", to_string(e.code())}, {"name", camel(e.code())}, {"message", e.what()}};
  } catch (const std::exception& e) {
    exit_code = 2;
    report["error"] = {{"code", "internal"}, {"name", "Internal"}, {"message", e.what()}};
  }
  if (suite) {
    config_echo["params"] = suite->params.echo();
    config_echo["tolerances"] = suite->tolerances.echo();
  }
  report["config"] = config_echo;
  report["status"] = exit_code == 0 ? "pass" : exit_code == 1 ? "fail" : exit_code == 3 ? "non-convergence" : "error";
  report["exit_code"] = exit_code;
  if (suite) {
    report["checks"] = suite->checks;
    report["data"] = suite->data;
    report["notes"] = suite->notes;
    result.tables = suite->tables;
  }
  result.exit_code = exit_code;
  result.report = report.dump(2) + "\n";
  return result;
}

}  // namespace lqp::experiments

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "json.hpp"
#include "lqp/experiments/experiments.hpp"

using namespace lqp::experiments;
using json = nlohmann::json;

namespace {

json report_of(const RunResult& r) { return json::parse(r.report); }

RunResult run_json(const json& config) { return run(config.dump()); }

int count_status(const json& report, const std::string& status) {
  int n = 0;
  for (const auto& c : report["checks"]) n += c["status"] == status;
  return n;
}

}  // namespace

TEST_CASE("nine experiment kinds with anchors") {
  const auto& list = list_experiments();
  CHECK(list.size() == 9);
  std::set<std::string> kinds;
  for (const auto& e : list) {
    kinds.insert(e.kind);
    CHECK_FALSE(e.anchor.empty());
  }
  for (const char* k : {"sobolev-verify", "ball-witness", "hyperbolic-witness", "line-witness", "poincare", "smooth",
                        "pde-solve", "hodge", "complex-analyze"})
    CHECK(kinds.count(k) == 1);
}

TEST_CASE("configuration errors exit 2 with config_error") {
  const std::string bad[] = {
      "not json",
      "[1, 2]",
      R"({"params": {}})",
      R"({"kind": "no-such-kind"})",
      R"({"kind": "line-witness", "extra": 1})",
      R"({"kind": "line-witness", "params": {"typo": 1}})",
      R"({"kind": "line-witness", "tolerances": {"gaussian": -1}})",
      R"({"kind": "line-witness", "tolerances": {"gaussian": 0}})",
      R"({"kind": "line-witness", "seed": -4})",
      R"({"kind": "line-witness", "seed": 4294967296})",
      R"({"kind": "line-witness", "output": {"report": 3}})",
      R"({"kind": "line-witness", "output": {"dir": "x"}})",
      R"({"kind": "pde-solve", "params": {"source": "nonsense"}})",
      R"({"kind": "sobolev-verify", "params": {"p": 0.5}})",
  };
  for (const auto& text : bad) {
    CAPTURE(text);
    const auto r = run(text);
    CHECK(r.exit_code == 2);
    const auto rep = report_of(r);
    CHECK(rep["status"] == "error");
    CHECK(rep["error"]["code"] == "config_error");
  }
}

TEST_CASE("ball witness: three Step records, exit 0, ladder CSV") {
  const auto r = run_json({{"kind", "ball-witness"},
                           {"params", {{"n", 2}, {"k", 1}, {"p", 4.0 / 3.0}, {"q", 8}, {"mu", -0.375}}}});
  CHECK(r.exit_code == 0);
  const auto rep = report_of(r);
  int steps = 0;
  for (const auto& c : rep["checks"]) {
    steps += c["name"].get<std::string>().rfind("Step ", 0) == 0;
    CHECK_FALSE(c["operation"].get<std::string>().empty());
    CHECK_FALSE(c["anchor"].get<std::string>().empty());
  }
  CHECK(steps == 3);
  CHECK(count_status(rep, "fail") == 0);
  REQUIRE(r.tables.size() == 1);
  CHECK(r.tables[0].name == "ball_ladder");
  CHECK(r.tables[0].content.rfind("t,pairing,", 0) == 0);
}

TEST_CASE("ball witness with p = q = 2 reports EmptyMuInterval") {
  const auto r = run_json({{"kind", "ball-witness"}, {"params", {{"p", 2}, {"q", 2}}}});
  CHECK(r.exit_code == 2);
  const auto rep = report_of(r);
  CHECK(rep["error"]["name"] == "EmptyMuInterval");
  CHECK(rep["config"]["params"]["p"] == 2.0);
}

TEST_CASE("reports are byte-identical across runs") {
  const json cfg = {{"kind", "complex-analyze"}, {"seed", 5}, {"params", {{"random_count", 3}}}};
  const auto a = run_json(cfg), b = run_json(cfg);
  CHECK(a.report == b.report);
  REQUIRE(a.tables.size() == b.tables.size());
  for (std::size_t i = 0; i < a.tables.size(); ++i) CHECK(a.tables[i].content == b.tables[i].content);
  const auto c = run_json({{"kind", "complex-analyze"}, {"seed", 6}, {"params", {{"random_count", 3}}}});
  CHECK(c.report != a.report);
}

TEST_CASE("report layout and effective config echo") {
  const auto r = run_json({{"kind", "line-witness"}});
  const auto rep = report_of(r);
  for (const char* k : {"schema", "versions", "kind", "anchor", "config", "status", "exit_code", "checks", "data", "notes"})
    CHECK(rep.contains(k));
  CHECK(rep["schema"] == report_schema);
  CHECK(rep["config"]["params"]["plateau_a"].size() == 3);
  CHECK(rep["config"]["tolerances"]["gaussian"] == 1e-6);
  CHECK(r.report.find("wall") == std::string::npos);
  CHECK(r.report.rfind("{\n  \"schema\"", 0) == 0);
}

TEST_CASE("a tolerance below the achievable accuracy fails the run with exit 1") {
  const auto r = run_json({{"kind", "hyperbolic-witness"}, {"tolerances", {{"pairing", 1e-12}}}});
  CHECK(r.exit_code == 1);
  const auto rep = report_of(r);
  CHECK(rep["status"] == "fail");
  CHECK(count_status(rep, "fail") == 1);
}

TEST_CASE("advisory checks never fail the run") {
  const auto r = run_json({{"kind", "ball-witness"}, {"tolerances", {{"dgamma_ratio", 1e-3}}}});
  CHECK(r.exit_code == 0);
  CHECK(count_status(report_of(r), "advisory") == 1);
}

TEST_CASE("pde: incompatible source refused with the defect 2 pi c") {
  const double c = 0.5;
  const auto r = run_json(
      {{"kind", "pde-solve"}, {"params", {{"resolution", 64}, {"source", "constant"}, {"amplitude", c}}}});
  CHECK(r.exit_code == 2);
  const auto rep = report_of(r);
  CHECK(rep["error"]["name"] == "IncompatibleSource");
  REQUIRE(rep["data"]["defect"].size() >= 1);
  CHECK(rep["data"]["defect"][0]["value"].get<double>() == doctest::Approx(2 * std::numbers::pi * c).epsilon(1e-12));
  CHECK(rep["data"]["compatible"] == false);
}

TEST_CASE("pde: iteration budget exhausted exits 3") {
  const auto r = run_json({{"kind", "pde-solve"},
                           {"params", {{"resolution", 64}, {"p", 4}, {"source", "manufactured"}, {"max_iterations", 3}}}});
  CHECK(r.exit_code == 3);
  const auto rep = report_of(r);
  CHECK(rep["status"] == "non-convergence");
  CHECK(rep["data"]["termination"] == "max_iterations");
  REQUIRE(r.tables.size() == 1);
  CHECK(r.tables[0].content.rfind("iteration,energy,residual,step\n", 0) == 0);
}

TEST_CASE("output paths are echoed, not written") {
  const auto r = run_json({{"kind", "line-witness"}, {"output", {{"report", "r.json"}, {"csv_prefix", "x_"}}}});
  CHECK(r.report_path == "r.json");
  CHECK(r.csv_prefix == "x_");
  CHECK(r.tables.size() == 3);
}

TEST_CASE("exponent strings") {
  const auto r = run_json({{"kind", "line-witness"}, {"params", {{"q", "inf"}}}});
  CHECK(r.exit_code == 0);
  CHECK(report_of(r)["config"]["params"]["q"] == "inf");
  CHECK(run_json({{"kind", "line-witness"}, {"params", {{"q", "infinity"}}}}).exit_code == 2);
}

TEST_CASE("form catalog: twelve forms, closedness flags match d") {
  int total = 0;
  for (int n : {2, 3}) {
    const auto cat = test_form_catalog(n);
    total += static_cast<int>(cat.size());
    for (const auto& f : cat) {
      CAPTURE(f.name);
      const auto* d = f.form.exact_differential();
      if (f.form.degree() == n) {
        CHECK(f.closed);
        continue;
      }
      REQUIRE(d != nullptr);
      double worst = 0.0;
      for (double x : {-0.4, 0.1, 0.3})
        for (double y : {-0.2, 0.25}) {
          const auto v = n == 2 ? (*d)({x, y}) : (*d)({x, y, 0.1 * x - y});
          for (double c : v) worst = std::max(worst, std::abs(c));
        }
      CHECK((worst < 1e-13) == f.closed);
    }
  }
  CHECK(total == 12);
}

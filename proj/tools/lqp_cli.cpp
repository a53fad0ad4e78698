#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lqp/lqp.h"

namespace fs = std::filesystem;

namespace {

/// Relative output paths resolve against LQP_OUTPUT_DIR when it is set.
fs::path output_path(const std::string& path) {
  const fs::path p(path);
  const char* dir = std::getenv("LQP_OUTPUT_DIR");
  if (p.is_absolute() || !dir || !*dir) return p;
  return fs::path(dir) / p;
}

bool write_file(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "lqp: cannot write " << path.string() << "\n";
    return false;
  }
  return true;
}

int run(const std::string& config_path) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "lqp: cannot read config " << config_path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  const auto start = std::chrono::steady_clock::now();
  lqp_report* report = nullptr;
  if (lqp_run(buf.str().c_str(), &report) != LQP_OK) {
    std::cerr << "lqp: " << lqp_last_error() << "\n";
    return 2;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int code = lqp_report_exit_code(report);

  const std::string report_path = lqp_report_output_path(report);
  if (report_path.empty()) {
    std::cout << lqp_report_json(report);
  } else if (!write_file(output_path(report_path), lqp_report_json(report))) {
    code = 2;
  }
  const std::string prefix = lqp_report_csv_prefix(report);
  if (!prefix.empty()) {
    for (std::size_t i = 0; i < lqp_report_csv_count(report); ++i) {
      const fs::path path = output_path(prefix + lqp_report_csv_name(report, i) + ".csv");
      if (!write_file(path, lqp_report_csv_content(report, i))) code = 2;
    }
  }
  lqp_report_free(report);
  std::fprintf(stderr, "lqp: exit %d, wall-clock %.3f s\n", code, seconds);
  return code;
}

int list_experiments() {
  for (std::size_t i = 0; i < lqp_experiment_count(); ++i) {
    const char *kind = nullptr, *anchor = nullptr, *description = nullptr;
    lqp_experiment_info(i, &kind, &anchor, &description);
    std::cout << kind << " → " << anchor << "\n    " << description << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale verification suites for L_{q,p} cohomology", "lqp"};
  app.set_version_flag("--version", std::string(lqp_version()));
  app.require_subcommand(1);

  std::string config;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment config and emit its report");
  run_cmd->add_option("config", config, "Path to a JSON config")->required();
  auto* list_cmd = app.add_subcommand("list-experiments", "List experiment kinds with their anchors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*run_cmd) return run(config);
  if (*list_cmd) return list_experiments();
  return 2;
}

#include <memory>
#include <new>
#include <string>

#include "lqp/error.hpp"
#include "lqp/experiments/experiments.hpp"
#include "lqp/hodge/hodge.hpp"
#include "lqp/homotopy/homotopy.hpp"
#include "lqp/lqp.h"

struct lqp_report {
  lqp::experiments::RunResult result;
};

struct lqp_grid {
  std::shared_ptr<const lqp::geometry::Grid> grid;
};

struct lqp_hodge {
  lqp::hodge::DiscreteHodgeSystem system;
};

namespace {

thread_local std::string last_error;

lqp_status set_error(lqp_status status, const std::string& message) {
  last_error = message;
  return status;
}

/// Runs fn, translating exceptions into a status and the thread's message.
template <class Fn>
lqp_status guarded(Fn&& fn) noexcept {
  try {
    last_error.clear();
    fn();
    return LQP_OK;
  } catch (const lqp::Error& e) {
    return set_error(static_cast<lqp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(LQP_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return set_error(LQP_INTERNAL_ERROR, e.what());
  } catch (...) {
    return set_error(LQP_INTERNAL_ERROR, "unknown exception");
  }
}

void need(const void* p, const char* what) {
  if (!p) lqp::fail(lqp::ErrorCode::invalid_argument, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* lqp_version(void) { return lqp::experiments::version(); }

const char* lqp_last_error(void) { return last_error.c_str(); }

const char* lqp_status_name(lqp_status status) {
  if (status == LQP_INTERNAL_ERROR) return "internal_error";
  if (status < LQP_OK || status > LQP_CONFIG_ERROR) return "unknown";
  return lqp::to_string(static_cast<lqp::ErrorCode>(status));
}

size_t lqp_experiment_count(void) { return lqp::experiments::list_experiments().size(); }

lqp_status lqp_experiment_info(size_t index, const char** kind, const char** anchor, const char** description) {
  return guarded([&] {
    const auto& list = lqp::experiments::list_experiments();
    if (index >= list.size()) lqp::fail(lqp::ErrorCode::invalid_argument, "experiment index out of range");
    if (kind) *kind = list[index].kind.c_str();
    if (anchor) *anchor = list[index].anchor.c_str();
    if (description) *description = list[index].description.c_str();
  });
}

lqp_status lqp_run(const char* config_json, lqp_report** out) {
  return guarded([&] {
    need(config_json, "config");
    need(out, "out");
    *out = nullptr;
    auto r = std::make_unique<lqp_report>();
    r->result = lqp::experiments::run(config_json);
    *out = r.release();
  });
}

int lqp_report_exit_code(const lqp_report* report) { return report ? report->result.exit_code : 2; }

const char* lqp_report_json(const lqp_report* report) { return report ? report->result.report.c_str() : ""; }

const char* lqp_report_output_path(const lqp_report* report) {
  return report ? report->result.report_path.c_str() : "";
}

const char* lqp_report_csv_prefix(const lqp_report* report) {
  return report ? report->result.csv_prefix.c_str() : "";
}

size_t lqp_report_csv_count(const lqp_report* report) { return report ? report->result.tables.size() : 0; }

const char* lqp_report_csv_name(const lqp_report* report, size_t index) {
  if (!report || index >= report->result.tables.size()) return nullptr;
  return report->result.tables[index].name.c_str();
}

const char* lqp_report_csv_content(const lqp_report* report, size_t index) {
  if (!report || index >= report->result.tables.size()) return nullptr;
  return report->result.tables[index].content.c_str();
}

void lqp_report_free(lqp_report* report) { delete report; }

lqp_status lqp_grid_create_periodic(int n, const double* lengths, const int* nodes, lqp_grid** out) {
  return guarded([&] {
    need(lengths, "lengths");
    need(nodes, "nodes");
    need(out, "out");
    *out = nullptr;
    if (n < 1 || n > 3) lqp::fail(lqp::ErrorCode::invalid_argument, "dimension must be 1, 2 or 3");
    const auto domain = n == 1 ? lqp::geometry::ChartDomain::circle(lengths[0])
                               : lqp::geometry::ChartDomain::torus(std::vector<double>(lengths, lengths + n));
    lqp::geometry::GridOptions opt;
    opt.resolution.assign(nodes, nodes + n);
    auto g = std::make_unique<lqp_grid>();
    g->grid = std::make_shared<const lqp::geometry::Grid>(lqp::geometry::build_grid(domain, opt));
    *out = g.release();
  });
}

int lqp_grid_dim(const lqp_grid* grid) { return grid ? grid->grid->dim() : 0; }

size_t lqp_grid_size(const lqp_grid* grid) { return grid ? grid->grid->size() : 0; }

void lqp_grid_free(lqp_grid* grid) { delete grid; }

lqp_status lqp_hodge_create(const lqp_grid* grid, lqp_hodge** out) {
  return guarded([&] {
    need(grid, "grid");
    need(out, "out");
    *out = nullptr;
    *out = new lqp_hodge{lqp::hodge::DiscreteHodgeSystem(grid->grid)};
  });
}

void lqp_hodge_free(lqp_hodge* hodge) { delete hodge; }

namespace {
void check_degree(const lqp_hodge* h, int k) {
  need(h, "hodge");
  if (k < 0 || k > h->system.dim()) lqp::fail(lqp::ErrorCode::degree_mismatch, "degree out of range");
}
}  // namespace

lqp_status lqp_hodge_size(const lqp_hodge* hodge, int k, size_t* out) {
  return guarded([&] {
    check_degree(hodge, k);
    need(out, "out");
    *out = hodge->system.size(k);
  });
}

lqp_status lqp_hodge_harmonic_dimension(const lqp_hodge* hodge, int k, int* out) {
  return guarded([&] {
    check_degree(hodge, k);
    need(out, "out");
    *out = hodge->system.harmonic_dimension(k);
  });
}

lqp_status lqp_hodge_spectral_gap(const lqp_hodge* hodge, double* out) {
  return guarded([&] {
    need(hodge, "hodge");
    need(out, "out");
    *out = hodge->system.spectral_gap();
  });
}

lqp_status lqp_hodge_green(const lqp_hodge* hodge, int k, const double* in, size_t length, double* out) {
  return guarded([&] {
    check_degree(hodge, k);
    need(in, "in");
    need(out, "out");
    if (length != hodge->system.size(k)) lqp::fail(lqp::ErrorCode::invalid_argument, "cochain length mismatch");
    const Eigen::Map<const Eigen::VectorXd> a(in, static_cast<Eigen::Index>(length));
    Eigen::Map<Eigen::VectorXd>(out, static_cast<Eigen::Index>(length)) = hodge->system.green(k, a);
  });
}

lqp_status lqp_riesz_bound(int n, double p, double q, double diameter, double* s, double* kernel_norm,
                           lqp_admissibility* admissibility) {
  return guarded([&] {
    const auto b = lqp::homotopy::riesz_bound(n, p, q, diameter);
    if (s) *s = b.s;
    if (kernel_norm) *kernel_norm = b.kernel_norm;
    if (admissibility) *admissibility = static_cast<lqp_admissibility>(b.admissibility);
  });
}

}  // extern "C"

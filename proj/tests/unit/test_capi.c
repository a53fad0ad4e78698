/* Exercises the C interface from plain C. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "lqp/lqp.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expectation failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static const double pi = 3.14159265358979323846;

static void test_run(void) {
  lqp_report* r = NULL;
  EXPECT(lqp_run("{\"kind\": \"line-witness\"}", &r) == LQP_OK);
  EXPECT(r != NULL);
  EXPECT(lqp_report_exit_code(r) == 0);
  EXPECT(strstr(lqp_report_json(r), "\"schema\": \"lqp-report/1\"") != NULL);
  EXPECT(lqp_report_csv_count(r) == 3);
  EXPECT(strcmp(lqp_report_csv_name(r, 0), "line_plateau") == 0);
  EXPECT(strncmp(lqp_report_csv_content(r, 0), "a,ratio,bound\n", 14) == 0);
  EXPECT(lqp_report_csv_name(r, 3) == NULL);
  EXPECT(strcmp(lqp_report_output_path(r), "") == 0);
  lqp_report_free(r);

  EXPECT(lqp_run("{\"kind\": \"ball-witness\", \"params\": {\"p\": 2, \"q\": 2}}", &r) == LQP_OK);
  EXPECT(lqp_report_exit_code(r) == 2);
  EXPECT(strstr(lqp_report_json(r), "EmptyMuInterval") != NULL);
  lqp_report_free(r);

  EXPECT(lqp_run(NULL, &r) == LQP_INVALID_ARGUMENT);
  EXPECT(strlen(lqp_last_error()) > 0);
  lqp_report_free(NULL);
}

static void test_list(void) {
  const char *kind, *anchor, *desc;
  EXPECT(lqp_experiment_count() == 9);
  EXPECT(lqp_experiment_info(1, &kind, &anchor, &desc) == LQP_OK);
  EXPECT(strcmp(kind, "ball-witness") == 0);
  EXPECT(lqp_experiment_info(9, &kind, &anchor, &desc) == LQP_INVALID_ARGUMENT);
  EXPECT(strcmp(lqp_status_name(LQP_EMPTY_MU_INTERVAL), "empty_mu_interval") == 0);
  EXPECT(strlen(lqp_version()) > 0);
}

/* G cos(x) = cos(x) / sigma^2 with sigma the symbol of the staggered
 * fourth-order difference at frequency 1. */
static void test_hodge(void) {
  const int n = 32;
  const double len = 2 * pi;
  lqp_grid* g = NULL;
  lqp_hodge* h = NULL;
  EXPECT(lqp_grid_create_periodic(1, &len, &n, &g) == LQP_OK);
  EXPECT(lqp_grid_dim(g) == 1);
  EXPECT(lqp_grid_size(g) == (size_t)n);
  EXPECT(lqp_hodge_create(g, &h) == LQP_OK);
  size_t size = 0;
  EXPECT(lqp_hodge_size(h, 0, &size) == LQP_OK && size == (size_t)n);
  const double step = len / n;
  const double sigma = (27 * sin(step / 2) - sin(3 * step / 2)) / (12 * step);
  double in[32], out[32], worst = 0;
  for (int i = 0; i < n; ++i) in[i] = cos(i * step);
  EXPECT(lqp_hodge_green(h, 0, in, size, out) == LQP_OK);
  for (int i = 0; i < n; ++i) worst = fmax(worst, fabs(out[i] - in[i] / (sigma * sigma)));
  EXPECT(worst < 1e-12);
  double gap = 0;
  EXPECT(lqp_hodge_spectral_gap(h, &gap) == LQP_OK && fabs(gap - sigma * sigma) < 1e-12);
  EXPECT(lqp_hodge_green(h, 0, in, size - 1, out) == LQP_INVALID_ARGUMENT);
  EXPECT(lqp_hodge_size(h, 2, &size) == LQP_DEGREE_MISMATCH);
  lqp_hodge_free(h);
  lqp_grid_free(g);

  const double lens[2] = {2 * pi, 2 * pi};
  const int nodes[2] = {8, 8};
  EXPECT(lqp_grid_create_periodic(2, lens, nodes, &g) == LQP_OK);
  EXPECT(lqp_hodge_create(g, &h) == LQP_OK);
  int dims[3] = {-1, -1, -1};
  for (int k = 0; k < 3; ++k) EXPECT(lqp_hodge_harmonic_dimension(h, k, &dims[k]) == LQP_OK);
  EXPECT(dims[0] == 1 && dims[1] == 2 && dims[2] == 1);
  lqp_hodge_free(h);
  lqp_grid_free(g);

  EXPECT(lqp_grid_create_periodic(4, lens, nodes, &g) == LQP_INVALID_ARGUMENT);
  EXPECT(g == NULL);
}

/* int_{|x|<1} |x|^{-1} dx = 2 pi in the plane. */
static void test_riesz(void) {
  double s = 0, norm = 0;
  lqp_admissibility a = LQP_INADMISSIBLE;
  EXPECT(lqp_riesz_bound(2, 2, 2, 2, &s, &norm, &a) == LQP_OK);
  EXPECT(a == LQP_ADMISSIBLE);
  EXPECT(fabs(s - 1) < 1e-15);
  EXPECT(fabs(norm - 2 * pi) < 1e-12);
  EXPECT(lqp_riesz_bound(2, 1.5, 8, 2, &s, &norm, &a) == LQP_OK);
  EXPECT(a != LQP_ADMISSIBLE);
}

int main(void) {
  test_run();
  test_list();
  test_hodge();
  test_riesz();
  if (failures) {
    fprintf(stderr, "%d expectation(s) failed\n", failures);
    return 1;
  }
  printf("capi: all expectations held\n");
  return 0;
}

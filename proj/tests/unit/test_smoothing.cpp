#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lqp/error.hpp"
#include "lqp/smoothing/smoothing.hpp"

using namespace lqp;
using namespace lqp::forms;
using namespace lqp::geometry;
using namespace lqp::smoothing;

namespace {

Grid u_grid() { return build_grid(ChartDomain::ball(2, 1.25), {{4, 16}, {}, QuadratureRule::automatic, 4}); }

DifferentialForm smooth_one_form() {
  return make_form(2, 1, [](const auto* x, auto* c) {
    using std::sin, std::cos;
    c[0] = sin(2.0 * x[0]) * x[1];
    c[1] = cos(x[0] + x[1]);
  });
}

double dist(const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

}  // namespace

TEST_CASE("radial profile") {
  using D = DeRhamDeformation;
  CHECK(D::profile(0.2) == 0.2);
  CHECK(D::profile(0.8) == doctest::Approx(std::exp(1.0 / 0.36)));
  // C^2 joins at both band ends
  for (double r : {1.0 / 3.0, 2.0 / 3.0}) {
    const double h = 1e-7;
    CHECK(D::profile(r - h) == doctest::Approx(D::profile(r + h)).epsilon(1e-6));
    CHECK(D::profile_slope(r - h) == doctest::Approx(D::profile_slope(r + h)).epsilon(1e-5));
  }
  double min_slope = 1e300;
  for (int i = 1; i < 10000; ++i) min_slope = std::min(min_slope, D::profile_slope(i / 10000.0));
  CHECK(min_slope >= 1.0 - 1e-12);
  for (double r : {0.1, 0.4, 0.5, 0.6, 0.7, 0.95, 0.999})
    CHECK(D::inverse_profile(D::profile(r)) == doctest::Approx(r).epsilon(1e-13));
}

TEST_CASE("translations s_v") {
  DeRhamDeformation def(2);
  const Point x{0.3, -0.4, 0.0};
  CHECK(dist(s_v_apply(x, {0, 0, 0}, def), x) <= 1e-15);
  const Point out{1.2, 0.1, 0.0};
  CHECK(s_v_apply(out, {0.5, 0.5, 0}, def) == out);
  const Point small{0.05, 0.1, 0.0};
  const Point moved = s_v_apply(small, {0.02, -0.03, 0}, def);
  CHECK(moved[0] == doctest::Approx(0.07).epsilon(1e-14));
  CHECK(moved[1] == doctest::Approx(0.07).epsilon(1e-14));

  // group law
  const Point v{0.15, -0.05, 0}, w{-0.1, 0.2, 0}, vw{0.05, 0.15, 0};
  for (const Point& p : {Point{0.3, -0.4, 0}, Point{0.6, 0.1, 0}, Point{-0.2, 0.85, 0}}) {
    CHECK(dist(s_v_apply(s_v_apply(p, w, def), v, def), s_v_apply(p, vw, def)) <= 1e-12);
  }

  // Jacobian against central differences
  double jac[4];
  const Point p{0.45, 0.3, 0};
  def.apply(p, v, jac);
  for (int j = 0; j < 2; ++j) {
    Point a = p, b = p;
    a[j] += 1e-6;
    b[j] -= 1e-6;
    const Point fa = def.apply(a, v), fb = def.apply(b, v);
    for (int i = 0; i < 2; ++i) CHECK(jac[i * 2 + j] == doctest::Approx((fa[i] - fb[i]) / 2e-6).epsilon(1e-7));
  }

  // continuity across the unit circle on a probe ring
  for (int i = 0; i < 16; ++i) {
    const double t = 2 * std::numbers::pi * i / 16;
    const Point ring{0.995 * std::cos(t), 0.995 * std::sin(t), 0};
    CHECK(dist(s_v_apply(ring, {0.1, 0.1, 0}, def), ring) < 1e-6);
  }
  CHECK_THROWS_AS(s_v_apply(x, {NAN, 0, 0}, def), Error);
}

TEST_CASE("mollifier weights") {
  auto m = MollifierSpec::standard(2, 0.1);
  double sum = 0.0;
  for (double w : m.weights) {
    CHECK(w > 0.0);
    sum += w;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& v : m.nodes) CHECK(std::hypot(v[0], v[1]) < 0.1);
  CHECK_THROWS_AS(MollifierSpec::standard(2, 1.5), Error);
}

TEST_CASE("regularization") {
  DeRhamDeformation def(2);
  auto m = MollifierSpec::standard(2, 0.1);
  auto c = regularize(DifferentialForm::constant(2, 0, {2.5}), def, m);
  CHECK(c({0.3, 0.2})[0] == doctest::Approx(2.5).epsilon(1e-14));

  auto w = smooth_one_form();
  auto rw = regularize(w, def, m);
  for (const Point& p : {Point{1.0, 0.0, 0}, Point{0.9, 0.8, 0}, Point{-1.1, 0.3, 0}}) {
    auto a = rw({p[0], p[1]}), b = w({p[0], p[1]});
    CHECK(a == b);
  }
  auto grid = u_grid();
  CHECK(commutation_error(w, def, m, grid) <= 1e-6);

  const auto metric = DiagonalMetric::euclidean(2);
  double prev = 1e300;
  for (double eps : {0.2, 0.1, 0.05}) {
    auto r = regularize(w, def, MollifierSpec::standard(2, eps));
    const double gap = lp_norm(linear_combination(1.0, r, -1.0, w), metric, grid, 2.0).value;
    CAPTURE(eps);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("norm probe") {
  DeRhamDeformation def(2);
  auto grid = u_grid();
  std::vector<DifferentialForm> samples{smooth_one_form(),
                                        make_form(2, 1, [](const auto* x, auto* c) { c[0] = x[1] * x[1]; c[1] = x[0] + 0.0 * x[1]; })};
  auto probe = operator_norm_probe(samples, 2.0, 2.0, def, MollifierSpec::standard(2, 0.02), grid);
  CAPTURE(probe.max_ratio);
  CHECK(probe.max_ratio <= 1.0 + 1e-3);

  auto outside = make_form(2, 0, [](const auto* x, auto* c) {
    using std::exp;
    auto r2 = x[0] * x[0] + x[1] * x[1];
    c[0] = r2 > 1.0 ? exp(-1.0 / (r2 - 1.0)) : 0.0 * r2;
  });
  auto rep = operator_norm_probe({outside}, 2.0, 2.0, def, MollifierSpec::standard(2, 0.1), grid);
  CHECK(rep.ratios[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("homotopy A") {
  DeRhamDeformation def(2);
  auto m = MollifierSpec::standard(2, 0.1);
  auto cfg = homotopy::HomotopyConfig::averaged(2, {0, 0, 0}, 0.3);
  auto grid = u_grid();
  auto poly = make_form(2, 1, [](const auto* x, auto* c) {
    c[0] = x[0] * x[1];
    c[1] = x[0] * x[0] - 2.0 * x[1];
  });
  CHECK(homotopy_A_residual(poly, def, m, cfg, grid) <= 1e-6);
  auto a = homotopy_A(poly, def, m, cfg);
  CHECK(a({1.1, 0.2})[0] == 0.0);
  CHECK(a({0.0, -1.0})[0] == 0.0);
}

TEST_CASE("two-chart composition smoke test") {
  DeRhamDeformation first(2), second(2, {0.8, 0.0, 0.0}, 0.5);
  auto m = MollifierSpec::standard(2, 0.1, 9);
  auto w = smooth_one_form();
  auto chained = regularize(regularize(w, first, m), second, m);
  CHECK(chained({-1.2, 0.1}) == w({-1.2, 0.1}));
  auto d_chained = exterior_derivative(chained, {1e-5});
  auto chained_d = regularize(regularize(*w.exact_differential(), first, m), second, m);
  for (const Point& p : {Point{0.9, 0.1, 0}, Point{0.2, -0.3, 0}, Point{1.2, 0.2, 0}})
    CHECK(std::abs(d_chained({p[0], p[1]})[0] - chained_d({p[0], p[1]})[0]) <= 1e-6);
}

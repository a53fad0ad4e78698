#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lqp/complex/complex.hpp"
#include "lqp/error.hpp"
#include "lqp/forms/autodiff.hpp"
#include "lqp/forms/calculus.hpp"
#include "lqp/hodge/hodge.hpp"
#include "lqp/sobolev/sobolev.hpp"

using namespace lqp;
using namespace lqp::sobolev;
using std::numbers::pi;

namespace {

std::shared_ptr<const geometry::Grid> periodic_grid(const geometry::ChartDomain& d, int n) {
  geometry::GridOptions o;
  o.resolution.assign(d.dim(), n);
  return std::make_shared<const geometry::Grid>(geometry::build_grid(d, o));
}

// Golden-section minimum of c -> sum |f_i - c|^q over a fine trapezoid.
double oracle_const_distance(double (*f)(double), double q, int samples) {
  std::vector<double> v(samples);
  const double h = 2 * pi / samples;
  for (int i = 0; i < samples; ++i) v[i] = f(i * h);
  auto obj = [&](double c) {
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x - c), q);
    return s * h;
  };
  double a = *std::min_element(v.begin(), v.end()), b = *std::max_element(v.begin(), v.end());
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    const double c1 = b - g * (b - a), c2 = a + g * (b - a);
    (obj(c1) < obj(c2) ? b : a) = (obj(c1) < obj(c2) ? c2 : c1);
  }
  return std::pow(obj(0.5 * (a + b)), 1.0 / q);
}

}  // namespace

TEST_CASE("circle functions, p = q = 2: constant 1") {
  auto grid = periodic_grid(geometry::ChartDomain::circle(2 * pi), 256);
  auto est = estimate_constant(grid, 0, 2, 2);
  REQUIRE(est.exact.has_value());
  CHECK(est.lower_bound >= 0.999);
  CHECK(std::abs(est.lower_bound - 1.0) <= 1e-3);
  CHECK(std::abs(*est.exact - 1.0) <= 1e-3);
  CHECK(est.lower_bound <= *est.exact + 1e-3);
  CHECK(est.solvability_method == "spectral");
  CHECK((est.best_member == "sin(x)" || est.best_member == "cos(x)"));
}

TEST_CASE("torus 1-forms match the spectral value") {
  auto grid = periodic_grid(geometry::ChartDomain::torus({2 * pi, 2 * pi}), 32);
  auto est = estimate_constant(grid, 1, 2, 2, {2, {}});
  hodge::DiscreteHodgeSystem sys(grid);
  const double spectral = 1.0 / std::sqrt(sys.spectral_gap());
  CHECK(std::abs(est.lower_bound - spectral) <= 1e-3);
}

TEST_CASE("agrees with the finite-complex corrector constant") {
  auto domain = geometry::ChartDomain::circle(2 * pi);
  auto grid = periodic_grid(domain, 64);
  auto est = estimate_constant(grid, 0, 2, 2);
  auto cx = complex::discretize(domain, geometry::DiagonalMetric::euclidean(1), *grid, 1);
  auto c = complex::corrector_constant(cx, 1, 2, 2);
  CHECK(std::abs(c.value - *est.exact) <= 1e-8);
  CHECK(std::abs(est.lower_bound - c.value) <= 1e-3);
}

TEST_CASE("general q uses convex minimization over closed forms") {
  auto grid = periodic_grid(geometry::ChartDomain::circle(2 * pi), 256);
  auto theta = forms::make_form(1, 0, [](const auto* x, auto* c) {
    using std::exp, std::sin;
    c[0] = exp(sin(x[0]));
  }, "exp(sin x)");
  auto est = estimate_constant(grid, 0, 2, 4, {1, {theta}});
  double ratio = -1;
  for (const auto& m : est.members)
    if (m.label == "exp(sin x)") ratio = m.ratio;
  const double num = oracle_const_distance([](double x) { return std::exp(std::sin(x)); }, 4, 4096);
  // ||(e^{sin x})'||_2^2 = int cos^2 e^{2 sin}, trapezoid on 4096 points
  double den = 0.0;
  for (int i = 0; i < 4096; ++i) {
    const double x = 2 * pi * i / 4096;
    den += std::pow(std::cos(x) * std::exp(std::sin(x)), 2) * 2 * pi / 4096;
  }
  CHECK(ratio == doctest::Approx(num / std::sqrt(den)).epsilon(1e-5));
  CHECK_FALSE(est.exact.has_value());
  CHECK(est.solvability_method == "family");
}

TEST_CASE("scale covariance and refinement stability") {
  auto domain = geometry::ChartDomain::circle(2 * pi);
  auto theta = forms::make_form(1, 0, [](const auto* x, auto* c) {
    using std::sin, std::cos;
    c[0] = sin(x[0]) + 0.3 * cos(2 * x[0]);
  }, "a");
  auto theta5 = forms::make_form(1, 0, [](const auto* x, auto* c) {
    using std::sin, std::cos;
    c[0] = 5.0 * (sin(x[0]) + 0.3 * cos(2 * x[0]));
  }, "b");
  auto ladder = estimate_ladder(domain, 0, 2, 3, {32, 64, 128}, {1, {theta, theta5}});
  REQUIRE(ladder.size() == 3);
  auto pick = [](const SobolevEstimate& e, const std::string& l) {
    for (const auto& m : e.members)
      if (m.label == l) return m.ratio;
    return -1.0;
  };
  CHECK(pick(ladder[2], "a") == doctest::Approx(pick(ladder[2], "b")).epsilon(1e-6));
  CHECK(std::abs(ladder[2].lower_bound / ladder[1].lower_bound - 1.0) < 1e-2);
}

TEST_CASE("violated exponents are rejected") {
  auto grid = periodic_grid(geometry::ChartDomain::torus({2 * pi, 2 * pi}), 16);
  try {
    estimate_constant(grid, 1, 1.5, 8);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::inadmissible_exponents);
  }
  // n = 1: every pair in (1, inf) is admissible
  auto circle = periodic_grid(geometry::ChartDomain::circle(2 * pi), 64);
  CHECK_NOTHROW(estimate_constant(circle, 0, 1.1, 50));
}

TEST_CASE("solvability on the torus") {
  auto grid = periodic_grid(geometry::ChartDomain::torus({2 * pi, 2 * pi}), 32);
  auto exact = forms::make_form(2, 2, [](const auto* x, auto* c) {
    using std::cos;
    c[0] = cos(x[0]);
  }, "cos x dx^dy");
  auto rep = verify_solvability(exact, grid, 2, 2);
  CHECK(rep.solvable);
  CHECK(rep.obstructions.empty());
  CHECK(rep.residual <= 1e-10);
  // sin x dy is the coexact primitive; discrete symbol shifts the ratio by O(h^4)
  CHECK(rep.ratio == doctest::Approx(1.0).epsilon(1e-4));

  auto area = forms::DifferentialForm::constant(2, 2, {1.0});
  auto ob = verify_solvability(area, grid, 2, 2);
  CHECK_FALSE(ob.solvable);
  REQUIRE(ob.obstructions.size() == 1);
  CHECK(ob.obstructions[0].value == doctest::Approx(4 * pi * pi).epsilon(1e-12));

  auto closed1 = forms::make_form(2, 1, [](const auto*, auto* c) {
    c[0] = 2.0;
    c[1] = 0.0;
  }, "2dx");
  auto ob1 = verify_solvability(closed1, grid, 2, 2);
  REQUIRE(ob1.obstructions.size() == 1);
  CHECK(ob1.obstructions[0].value == doctest::Approx(8 * pi * pi));

  auto not_closed = forms::make_form(2, 1, [](const auto* x, auto* c) {
    using std::sin;
    c[0] = 0.0;
    c[1] = sin(x[0]);
  });
  CHECK_THROWS_AS(verify_solvability(not_closed, grid, 2, 2), Error);
}

TEST_CASE("solvability on the ball") {
  auto ball = geometry::ChartDomain::ball(2);
  geometry::GridOptions o;
  o.resolution = {8, 32};
  auto grid = std::make_shared<const geometry::Grid>(geometry::build_grid(ball, o));
  auto area = forms::DifferentialForm::constant(2, 2, {1.0});
  auto rep = verify_solvability(area, grid, 2, 2);
  CHECK(rep.method == "homotopy");
  CHECK(rep.solvable);
  REQUIRE(rep.bound.has_value());
  CHECK(*rep.bound == doctest::Approx(2 * pi));
  // eta = (x dy - y dx)/2, ||eta||_2^2 = pi/8, ||omega||_2^2 = pi
  CHECK(rep.ratio == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-8));
  CHECK(rep.ratio <= 2 * pi);
}

TEST_CASE("finite-volume monotonicity") {
  auto unit = periodic_grid(geometry::ChartDomain::torus({1.0, 1.0}), 16);
  const auto euclid = geometry::DiagonalMetric::euclidean(2);
  auto c = forms::DifferentialForm::constant(2, 0, {3.0});
  auto eq = monotonicity_check(*unit, euclid, {c}, 2, 4);
  CHECK(eq.all_hold());
  CHECK(eq.samples[0].equality);

  auto torus = periodic_grid(geometry::ChartDomain::torus({2 * pi, 2 * pi}), 32);
  auto random = random_trig_forms(2, 1, 6, 7);
  auto rep = monotonicity_check(*torus, euclid, random, 2, 4);
  CHECK(rep.factor == doctest::Approx(std::pow(4 * pi * pi, 0.25)));
  CHECK(rep.all_hold());
  for (const auto& s : rep.samples) CHECK_FALSE(s.equality);

  auto spike = forms::make_form(2, 0, [](const auto* x, auto* c) {
    using std::exp;
    c[0] = exp(-20.0 * ((x[0] - pi) * (x[0] - pi) + (x[1] - pi) * (x[1] - pi)));
  }, "spike");
  auto sp = monotonicity_check(*torus, euclid, {spike}, 2, 4);
  CHECK(sp.samples[0].slack > sp.samples[0].norm_q1);

  auto hp = geometry::ChartDomain::halfplane(1, 0, 1);
  geometry::GridOptions ho;
  ho.resolution = {16, 16};
  auto hgrid = geometry::build_grid(hp, ho);
  CHECK_THROWS_AS(monotonicity_check(hgrid, geometry::DiagonalMetric::horocyclic(), {c}, 2, 4), Error);
}

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lqp/error.hpp"
#include "lqp/geometry/geometry.hpp"
#include "lqp/geometry/quadrature.hpp"

using namespace lqp;
using namespace lqp::geometry;

namespace {
double weight_sum(const Grid& g) {
  double s = 0.0;
  for (double w : g.weights()) s += w;
  return s;
}
}  // namespace

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const auto& rule = gauss_legendre(5);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 8);
  CHECK(s == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
  const double breaks[] = {0.0, std::numbers::pi};
  CHECK(integrate([](double x) { return std::sin(x); }, breaks) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("sobolev exponent verdicts") {
  CHECK(sobolev_exponent_check(ExponentPair(2, 2), 3).verdict == SobolevVerdict::strict);
  auto v = sobolev_exponent_check(ExponentPair(4.0 / 3.0, 8), 2);
  CHECK(v.verdict == SobolevVerdict::violated);
  CHECK(v.excess == doctest::Approx(5.0 / 8.0 - 0.5));
  CHECK(sobolev_exponent_check(ExponentPair(2, infinity), 2).verdict == SobolevVerdict::boundary);
  CHECK(sobolev_exponent_check(ExponentPair(1, 2), 2).verdict == SobolevVerdict::boundary);
  CHECK(sobolev_exponent_check(ExponentPair(1, 2), 2).branch == "p < n, q = np/(n-p)");
}

TEST_CASE("exponent pair conjugates and young exponent") {
  ExponentPair e(3, 6);
  CHECK(1.0 / e.p() + 1.0 / e.p_conjugate() == doctest::Approx(1.0));
  CHECK(1.0 / e.q() + 1.0 / e.q_conjugate() == doctest::Approx(1.0));
  CHECK(ExponentPair(1, 4).p_conjugate() == infinity);
  CHECK(ExponentPair(infinity, 4).p_conjugate() == 1.0);
  REQUIRE(e.young_exponent());
  CHECK(1.0 / e.p() + 1.0 / *e.young_exponent() == doctest::Approx(1.0 + 1.0 / e.q()));
  CHECK_FALSE(ExponentPair(1, infinity).young_exponent());
  CHECK_THROWS_AS(ExponentPair(0.5, 2), Error);
}

TEST_CASE("grids cover the chart with the right measure") {
  auto g = build_grid(ChartDomain::interval(0, 1), {{8}});
  CHECK(g.size() == 8);
  CHECK(weight_sum(g) == doctest::Approx(1.0).epsilon(1e-12));

  const double L = 2 * std::numbers::pi;
  auto t = build_grid(ChartDomain::torus({L, L}), {{32, 32}});
  CHECK(t.size() == 1024);
  CHECK(weight_sum(t) == doctest::Approx(L * L).epsilon(1e-12));
  CHECK(t.axes()[0].nodes.back() < L - 1e-9);

  GridOptions gauss{{16}, std::nullopt, QuadratureRule::gauss, 8};
  CHECK(weight_sum(build_grid(ChartDomain::interval(-1, 2), gauss)) == doctest::Approx(3.0));

  GridOptions ball{{64, 64}, 2.0};
  auto b = build_grid(ChartDomain::ball(2), ball);
  const auto& edges = b.axes()[0].edges;
  for (int i = 0; i <= 64; ++i) CHECK(edges[i] == doctest::Approx(std::pow(i / 64.0, 2)));
  const auto& r = b.axes()[0].nodes;
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] > r[i - 1]);
  CHECK(weight_sum(b) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  for (double w : b.weights()) CHECK(w > 0.0);

  auto b3 = build_grid(ChartDomain::ball(3), {{8, 8, 8}, 2.0});
  CHECK(weight_sum(b3) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-12));
}

TEST_CASE("grid construction rejects bad input") {
  CHECK_THROWS_AS(build_grid(ChartDomain::torus({1.0}), {{16}, 2.0}), Error);
  CHECK_THROWS_AS(build_grid(ChartDomain::interval(0, 1), {{3}}), Error);
  CHECK_THROWS_AS(ChartDomain::interval(1, 0), Error);
  CHECK_THROWS_AS(ChartDomain::halfplane(1, 2, 1), Error);
}

TEST_CASE("volumes") {
  auto d = ChartDomain::torus({2 * std::numbers::pi, 2 * std::numbers::pi});
  auto g = build_grid(d, {{16, 16}});
  CHECK(std::abs(volume(d, DiagonalMetric::euclidean(2), g) - 4 * std::numbers::pi * std::numbers::pi) < 1e-10);

  auto h = ChartDomain::halfplane(1, 0, 1);
  GridOptions opts{{16, 32}, std::nullopt, QuadratureRule::gauss, 8};
  auto hg = build_grid(h, opts);
  CHECK(std::abs(volume(h, DiagonalMetric::horocyclic(), hg) - 2 * (std::exp(1.0) - 1)) < 1e-6);
}

TEST_CASE("conformal rescaling") {
  auto d = ChartDomain::halfplane(1, -1, 1);
  auto g = build_grid(d, {{8, 8}});
  auto flat = conformal_rescale(DiagonalMetric::horocyclic(), [](auto x) { return std::exp(-x[1]); }, g);
  double c[2];
  const double x[] = {0.3, 0.7};
  flat.coefficients(x, c);
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[1] == doctest::Approx(std::exp(-1.4)));

  auto two = conformal_rescale(DiagonalMetric::euclidean(2), [](auto) { return 2.0; }, g);
  CHECK(two.volume_density(x) == doctest::Approx(4.0));
  CHECK_THROWS_AS(conformal_rescale(DiagonalMetric::euclidean(2), [](auto) { return 0.0; }, g), Error);
}

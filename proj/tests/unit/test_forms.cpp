#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lqp/error.hpp"
#include "lqp/forms/calculus.hpp"
#include "lqp/forms/io.hpp"
#include <sstream>

using namespace lqp;
using namespace lqp::forms;
using namespace lqp::geometry;

namespace {
constexpr double pi = std::numbers::pi;

std::shared_ptr<const Grid> torus_grid(int n) {
  return std::make_shared<const Grid>(build_grid(ChartDomain::torus({2 * pi, 2 * pi}), {{n, n}}));
}
}  // namespace

TEST_CASE("multi-index basis and signs") {
  CHECK(basis(3, 1).size() == 3);
  CHECK(basis(3, 2) == std::vector<Mask>{0b011, 0b101, 0b110});
  CHECK(wedge_sign(0b10, 0b01) == -1);
  CHECK(wedge_sign(0b01, 0b10) == 1);
  CHECK(wedge_sign(0b01, 0b01) == 0);
  CHECK(label(0b101) == "dx1^dx3");
}

TEST_CASE("exterior derivative of analytic forms") {
  auto f = make_form(2, 1, [](const auto* x, auto* c) {
    c[0] = 0.0 * x[0];
    c[1] = x[0];
  });
  auto df = exterior_derivative(f);
  CHECK(df({0.3, -1.2})[0] == doctest::Approx(1.0));
  auto one = DifferentialForm::constant(1, 0, {1.0});
  CHECK(exterior_derivative(one)({0.5})[0] == 0.0);
  CHECK_THROWS_AS(exterior_derivative(df), Error);

  // d d = 0 exactly through the jet of the attached differential.
  auto g = make_form(3, 0, [](const auto* x, auto* c) {
    using std::sin, std::exp;
    c[0] = sin(x[0] * x[1]) * exp(x[2]);
  });
  auto ddg = exterior_derivative(exterior_derivative(g));
  for (double v : ddg({0.4, -0.7, 0.2})) CHECK(std::abs(v) < 1e-13);

  // finite-difference fallback on a plain analytic form
  auto plain = DifferentialForm::analytic(2, 0, [](auto x, auto out) { out[0] = std::sin(x[0]) * x[1]; });
  auto dp = exterior_derivative(plain)({0.3, 2.0});
  CHECK(dp[0] == doctest::Approx(std::cos(0.3) * 2.0).epsilon(1e-10));
  CHECK(dp[1] == doctest::Approx(std::sin(0.3)).epsilon(1e-10));
}

TEST_CASE("sampled derivative converges at fourth order") {
  auto err = [](int n) {
    auto grid = std::make_shared<const Grid>(build_grid(ChartDomain::circle(2 * pi), {{n}}));
    auto s = sample(make_form(1, 0, [](const auto* x, auto* c) { using std::sin; c[0] = sin(x[0]); }), grid);
    auto ds = exterior_derivative(s);
    auto exact = make_form(1, 1, [](const auto* x, auto* c) { using std::cos; c[0] = cos(x[0]); });
    return max_difference(ds, exact, *grid);
  };
  const double e1 = err(32), e2 = err(64);
  CHECK(std::log2(e1 / e2) > 3.8);

  // one-sided closure on a non-periodic axis
  auto grid = std::make_shared<const Grid>(build_grid(ChartDomain::interval(0, 1), {{41}}));
  auto s = sample(make_form(1, 0, [](const auto* x, auto* c) { using std::exp; c[0] = exp(x[0]); }), grid);
  auto exact = make_form(1, 1, [](const auto* x, auto* c) { using std::exp; c[0] = exp(x[0]); });
  CHECK(max_difference(exterior_derivative(s), exact, *grid) < 1e-5);

  // periodic difference operators commute, so dd vanishes to rounding
  auto dd = [](int n) {
    auto grid = torus_grid(n);
    auto s = sample(make_form(2, 0, [](const auto* x, auto* c) { using std::sin, std::cos; c[0] = sin(x[0]) * cos(2.0 * x[1]); }), grid);
    auto r = exterior_derivative(exterior_derivative(s));
    return max_difference(r, DifferentialForm::zero(2, 2), *grid);
  };
  CHECK(dd(32) < 1e-12);
  CHECK(dd(64) < 1e-12);
}

TEST_CASE("wedge product") {
  auto a = make_form(2, 1, [](const auto* x, auto* c) { c[0] = 0.0 * x[0]; c[1] = x[0]; });
  auto b = make_form(2, 1, [](const auto* x, auto* c) { c[0] = x[1]; c[1] = 0.0 * x[1]; });
  auto ab = wedge(a, b);
  CHECK(ab({2.0, 3.0})[0] == doctest::Approx(-6.0));
  CHECK(wedge(b, a)({2.0, 3.0})[0] == doctest::Approx(6.0));
  auto one = DifferentialForm::constant(2, 0, {1.0});
  CHECK(wedge(a, one)({2.0, 3.0}) == a({2.0, 3.0}));
  CHECK_THROWS_AS(wedge(ab, a), Error);

  // Leibniz through jets: d(a ^ b) = da ^ b - a ^ db
  auto f = make_form(3, 1, [](const auto* x, auto* c) { using std::sin; c[0] = sin(x[1]); c[1] = x[0] * x[2]; c[2] = x[1] * x[1]; });
  auto g = make_form(3, 1, [](const auto* x, auto* c) { using std::cos; c[0] = x[2]; c[1] = cos(x[0]); c[2] = x[0] * x[1]; });
  auto lhs = exterior_derivative(wedge(f, g))({0.3, 0.5, -0.4});
  auto r1 = wedge(exterior_derivative(f), g)({0.3, 0.5, -0.4});
  auto r2 = wedge(f, exterior_derivative(g))({0.3, 0.5, -0.4});
  CHECK(lhs[0] == doctest::Approx(r1[0] - r2[0]).epsilon(1e-12));
}

TEST_CASE("hodge star contract and involution") {
  auto e = DiagonalMetric::euclidean(2);
  auto dx = DifferentialForm::constant(2, 1, {1.0, 0.0});
  auto dy = DifferentialForm::constant(2, 1, {0.0, 1.0});
  CHECK(hodge_star(dx, e)({0.0, 0.0}) == std::vector<double>{0.0, 1.0});
  CHECK(hodge_star(dy, e)({0.0, 0.0}) == std::vector<double>{-1.0, 0.0});

  auto h = DiagonalMetric::horocyclic();
  auto sdy = hodge_star(dx, h)({0.1, 0.6});  // channel 0 is dy in (y, z)
  CHECK(sdy[1] == doctest::Approx(std::exp(-0.6)));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int n = 1; n <= 3; ++n) {
    std::vector<DiagonalMetric> metrics{DiagonalMetric::euclidean(n),
                                        DiagonalMetric(n, [n](auto x, auto g) { for (int i = 0; i < n; ++i) g[i] = 1.5 + std::sin(x[i] + i); }, "wavy")};
    if (n == 2) metrics.push_back(h);
    for (const auto& m : metrics)
      for (int k = 0; k <= n; ++k) {
        std::vector<double> ca(binomial(n, k)), cb(binomial(n, k));
        for (auto& v : ca) v = u(rng);
        for (auto& v : cb) v = u(rng);
        auto a = DifferentialForm::constant(n, k, ca), b = DifferentialForm::constant(n, k, cb);
        std::vector<double> x(n);
        for (auto& v : x) v = u(rng);
        const double top = wedge(a, hodge_star(b, m))(x)[0];
        CHECK(top == doctest::Approx(pointwise_inner(a, b, m, x) * m.volume_density(x)).epsilon(1e-12));
        auto ss = hodge_star(hodge_star(a, m), m)(x);
        const double sign = (k * (n - k)) % 2 ? -1.0 : 1.0;
        for (int c = 0; c < binomial(n, k); ++c) CHECK(std::abs(ss[c] - sign * ca[c]) < 1e-12);
      }
  }
}

TEST_CASE("codifferential") {
  auto e1 = DiagonalMetric::euclidean(1);
  auto u = make_form(1, 1, [](const auto* x, auto* c) { using std::sin; c[0] = sin(x[0]); });
  CHECK(codifferential(u, e1)({0.4})[0] == doctest::Approx(-std::cos(0.4)).epsilon(1e-12));
  CHECK_THROWS_AS(codifferential(DifferentialForm::constant(1, 0, {1.0}), e1), Error);

  auto e2 = DiagonalMetric::euclidean(2);
  auto grid = torus_grid(32);
  auto par = DifferentialForm::constant(2, 1, {0.3, -2.0});
  CHECK(max_difference(codifferential(par, e2), DifferentialForm::zero(2, 0), *grid) < 1e-12);

  // adjointness on the torus
  auto w = make_form(2, 1, [](const auto* x, auto* c) { using std::sin, std::cos; c[0] = sin(x[0] + 2.0 * x[1]); c[1] = cos(x[0]) * sin(x[1]); });
  auto phi = make_form(2, 0, [](const auto* x, auto* c) { using std::sin, std::cos; c[0] = cos(2.0 * x[0]) + sin(x[0] - x[1]); });
  const double lhs = inner_product_integral(w, exterior_derivative(phi), e2, *grid);
  const double rhs = inner_product_integral(codifferential(w, e2), phi, e2, *grid);
  CHECK(std::abs(lhs - rhs) < 1e-8);
}

TEST_CASE("norms and pairings") {
  auto gi = build_grid(ChartDomain::interval(0, 1), {{16}});
  auto one = DifferentialForm::constant(1, 0, {1.0});
  for (double p : {1.0, 2.0, 3.5, infinity})
    CHECK(lp_norm(one, DiagonalMetric::euclidean(1), gi, p).value == doctest::Approx(1.0));

  auto gc = build_grid(ChartDomain::circle(2 * pi), {{64}});
  auto s = make_form(1, 1, [](const auto* x, auto* c) { using std::sin; c[0] = sin(x[0]); });
  auto rep = lp_norm(s, DiagonalMetric::euclidean(1), gc, 2.0);
  CHECK(std::abs(rep.value - std::sqrt(pi)) < 1e-8);
  CHECK(rep.tail_correction == 0.0);

  auto zero = DifferentialForm::zero(1, 0);
  CHECK(pairing_integral(zero, s, gc) == 0.0);
  CHECK_THROWS_AS(pairing_integral(s, s, gc), Error);

  // Hoelder on random trigonometric pairs
  auto grid = torus_grid(32);
  auto e2 = DiagonalMetric::euclidean(2);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 5; ++trial) {
    const double a = u(rng), b = u(rng), c = u(rng);
    auto al = make_form(2, 1, [=](const auto* x, auto* o) { using std::sin, std::cos; o[0] = a * sin(x[0]) + b; o[1] = c * cos(x[1] + x[0]); });
    auto ga = make_form(2, 1, [=](const auto* x, auto* o) { using std::sin, std::cos; o[0] = b * cos(2.0 * x[1]); o[1] = a + c * sin(x[0]); });
    for (double p : {1.5, 2.0, 4.0}) {
      const double pc = p / (p - 1);
      CHECK(std::abs(pairing_integral(al, ga, *grid)) <=
            lp_norm(al, e2, *grid, p).value * lp_norm(ga, e2, *grid, pc).value * (1 + 1e-12));
    }
  }
}

TEST_CASE("conformal scaling of pointwise and integral norms") {
  auto d = ChartDomain::halfplane(1, -1, 1);
  auto grid = build_grid(d, {{16, 16}, std::nullopt, QuadratureRule::gauss, 8});
  auto h = DiagonalMetric::horocyclic();
  auto rho = [](std::span<const double> x) { return 1.0 + 0.5 * std::sin(x[0] + x[1]); };
  auto g1 = conformal_rescale(h, rho, grid);
  auto w = make_form(2, 1, [](const auto* x, auto* c) { using std::sin, std::cos; c[0] = sin(x[1]); c[1] = cos(x[0]) + 0.5; });
  for (std::size_t i = 0; i < grid.size(); i += 7) {
    auto x = grid.point(i);
    CHECK(pointwise_norm(w, g1, x) == doctest::Approx(pointwise_norm(w, h, x) / rho(x)).epsilon(1e-12));
  }
  // p = n/k = 2 for 1-forms in 2-D
  CHECK(lp_norm(w, g1, grid, 2.0).value == doctest::Approx(lp_norm(w, h, grid, 2.0).value).epsilon(1e-12));
}

TEST_CASE("pullback") {
  auto u = make_form(1, 1, [](const auto* x, auto* c) { using std::sin; c[0] = sin(x[0]); });
  ChartMap twice{1, [](auto x, auto fx, auto jac) { fx[0] = 2 * x[0]; jac[0] = 2.0; }};
  CHECK(pullback(u, twice)({0.3})[0] == doctest::Approx(2 * std::sin(0.6)));
  ChartMap id{2, [](auto x, auto fx, auto jac) { fx[0] = x[0]; fx[1] = x[1]; jac[0] = jac[3] = 1; jac[1] = jac[2] = 0; }};
  auto w = make_form(2, 1, [](const auto* x, auto* c) { c[0] = x[1]; c[1] = x[0] * x[0]; });
  CHECK(pullback(w, id)({0.4, 0.9}) == w({0.4, 0.9}));
  ChartMap collapse{1, [](auto, auto fx, auto jac) { fx[0] = 0; jac[0] = 0; }};
  CHECK_THROWS_AS(pullback(u, collapse)({0.1}), Error);

  // functoriality (F o G)^* = G^* F^*
  ChartMap F{2, [](auto x, auto fx, auto jac) { fx[0] = x[0] + 0.1 * x[1] * x[1]; fx[1] = x[1]; jac[0] = 1; jac[1] = 0.2 * x[1]; jac[2] = 0; jac[3] = 1; }};
  ChartMap G{2, [](auto x, auto fx, auto jac) { fx[0] = 2 * x[0]; fx[1] = x[1] + x[0]; jac[0] = 2; jac[1] = 0; jac[2] = 1; jac[3] = 1; }};
  ChartMap FG{2, [F, G](auto x, auto fx, auto jac) {
    double gx[2], jg[4], jf[4];
    G.apply(x, gx, jg);
    F.apply(std::span<const double>(gx, 2), fx, jf);
    for (int i = 0; i < 2; ++i) for (int j = 0; j < 2; ++j) jac[i * 2 + j] = jf[i * 2] * jg[j] + jf[i * 2 + 1] * jg[2 + j];
  }};
  auto a = pullback(w, FG)({0.3, -0.5});
  auto b = pullback(pullback(w, F), G)({0.3, -0.5});
  CHECK(a[0] == doctest::Approx(b[0]));
  CHECK(a[1] == doctest::Approx(b[1]));
  auto area = DifferentialForm::constant(2, 2, {1.0});
  CHECK(pullback(area, G)({0.0, 0.0})[0] == doctest::Approx(2.0));
}

TEST_CASE("sampled interpolation") {
  auto grid = torus_grid(32);
  auto f = make_form(2, 0, [](const auto* x, auto* c) { using std::sin, std::cos; c[0] = sin(x[0]) * cos(x[1]); });
  auto s = sample(f, grid, 3);
  CHECK(std::abs(s({0.123, 4.5})[0] - f({0.123, 4.5})[0]) < 1e-4);
  auto lin = sample(f, grid, 1);
  CHECK(std::abs(lin({0.123, 4.5})[0] - f({0.123, 4.5})[0]) < 1e-2);
}

TEST_CASE("weak closedness survives L^p limits") {
  // closed forms converging in L^p pair to zero against exact test forms
  auto grid = torus_grid(32);
  auto dphi = exterior_derivative(make_form(2, 0, [](const auto* x, auto* c) { using std::cos; c[0] = cos(x[0] - x[1]); }));
  for (int m = 1; m <= 4; ++m) {
    auto closed = exterior_derivative(make_form(2, 0, [m](const auto* x, auto* c) { using std::sin; c[0] = sin(x[0] + x[1]) + sin(m * x[0]) / (m * m); }));
    CHECK(std::abs(pairing_integral(closed, dphi, *grid)) < 1e-10);
  }
}

TEST_CASE("text serialization round trip") {
  auto grid = torus_grid(8);
  auto f = make_form(2, 1, [](const auto* x, auto* c) { using std::sin, std::cos; c[0] = sin(x[0]); c[1] = cos(x[1]) / 3.0; });
  auto s = sample(f, grid);
  std::stringstream buf;
  write_text(buf, s);
  auto back = read_text(buf);
  CHECK(back.degree() == 1);
  CHECK(back.samples().grid->size() == 64);
  CHECK(back.samples().values == s.samples().values);

  auto hg = std::make_shared<const Grid>(build_grid(ChartDomain::halfplane(1, 0, 2), {{16, 8}, std::nullopt, QuadratureRule::gauss, 8}));
  auto h = sample(DifferentialForm::constant(2, 2, {1.5}), hg);
  std::stringstream b2;
  write_text(b2, h);
  auto hb = read_text(b2);
  CHECK(hb.samples().grid->axes()[0].nodes == hg->axes()[0].nodes);
  CHECK_THROWS_AS(write_text(b2, f), Error);
  std::stringstream junk("garbage 3");
  CHECK_THROWS_AS(read_text(junk), Error);
}

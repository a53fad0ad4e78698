#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lqp/error.hpp"
#include "lqp/geometry/quadrature.hpp"
#include "lqp/witness/witness.hpp"

using namespace lqp;
using namespace lqp::witness;
constexpr double pi = std::numbers::pi;

TEST_CASE("smooth step") {
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
  CHECK(smooth_step_slope(0.5) == doctest::Approx(2.0).epsilon(1e-14));
  double m = 0.0;
  for (int i = 1; i < 10000; ++i) m = std::max(m, smooth_step_slope(i / 10000.0));
  CHECK(m <= 2.0 + 1e-12);
  const double h = 1e-6;
  CHECK(smooth_step_slope(0.3) == doctest::Approx((smooth_step(0.3 + h) - smooth_step(0.3 - h)) / (2 * h)).epsilon(1e-8));
}

TEST_CASE("plateau bound on the line") {
  auto r = line_plateau_bound(10.0, 2.0, 2.0);
  CHECK(r.value("bound") == doctest::Approx(3.0 / std::pow(2.0, 1.5)).epsilon(1e-14));
  CHECK(r.value("ratio") >= r.value("bound"));
  CHECK(r.passed);
  double prev = 0.0;
  for (double a : {10.0, 100.0, 1000.0}) {
    auto ra = line_plateau_bound(a, 2.0, 2.0);
    CHECK(ra.passed);
    CHECK(ra.value("ratio") >= prev);
    prev = ra.value("ratio");
  }
  // grows like a^{1/q}
  CHECK(line_plateau_bound(1000.0, 2.0, 2.0).value("ratio") / line_plateau_bound(10.0, 2.0, 2.0).value("ratio") ==
        doctest::Approx(std::sqrt(999.0 / 9.0)).epsilon(0.05));
  CHECK(line_plateau_bound(2.0, 1.0, geometry::infinity).verdict == "excluded");
  CHECK_THROWS_AS(line_plateau_bound(1.0, 2.0, 2.0), Error);
}

TEST_CASE("gaussian bound on the line") {
  auto r = line_gaussian_bound(4.0, 2.0);
  CHECK(r.value("gap") == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(r.value("norm_g_p") == doctest::Approx(std::pow(8.0, -0.25)).epsilon(1e-10));
  CHECK(r.passed);
  for (double k : {0.1, 1.0, 10.0, 100.0}) CHECK(line_gaussian_bound(k, 1.0).value("ratio") == doctest::Approx(0.5).epsilon(1e-9));
  auto ladder = line_gaussian_ladder({0.01, 0.1, 1.0, 10.0, 100.0}, 2.0);
  CHECK(ladder.passed);
  CHECK(ladder.value("fitted_exponent") == doctest::Approx(-0.25).epsilon(0.02));
}

TEST_CASE("reduced approximation on the line") {
  double prev = 1e300;
  for (double m : {2.0, 4.0, 8.0}) {
    auto r = line_reduced_approx(LineForm::gaussian(), m, 2.0);
    CAPTURE(m);
    CHECK(r.value("residual") < prev);
    CHECK(r.value("lambda_norm") == doctest::Approx(1.0 / (2 * m)).epsilon(1e-8));
    prev = r.value("residual");
  }
  auto c = line_reduced_approx(LineForm::compact_bump(), 2.0, 2.0);
  CHECK(c.value("mass") == doctest::Approx(16.0 / 15.0).epsilon(1e-12));
  CHECK(c.value("residual") <= c.value("lambda_norm") + 1e-12);
  CHECK(c.value("lambda_norm") < 0.5);
  auto z = line_reduced_approx(LineForm::zero(), 2.0, 2.0);
  CHECK(z.value("residual") == 0.0);
  CHECK_THROWS_AS(line_reduced_approx(LineForm::gaussian(), 2.0, 1.0), Error);
}

TEST_CASE("hyperbolic witnesses") {
  auto pair = hyperbolic_witnesses();
  CHECK(pair.report.passed);
  CHECK(pair.report.value("pairing") == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(pair.report.value("min_wedge") >= -1e-12);
  CHECK(pair.normalization == doctest::Approx(2.0).epsilon(1e-12));  // raw pairing 1 * 1/2

  HyperbolicOptions doubled;
  doubled.z_max = 8.0;
  for (double r : {1.5, 2.0, 4.0}) {
    auto a = hyperbolic_differential_norm(pair, false, r);
    auto b = hyperbolic_differential_norm(pair, false, r, doubled);
    CAPTURE(r);
    CHECK(std::abs(a.value - b.value) <= 1e-6 * b.value);
    CHECK(a.tail > b.tail);
  }
}

TEST_CASE("hyperbolic nonvanishing") {
  auto r = hyperbolic_nonvanishing(2.0, 2.0);
  CHECK(r.passed);
  CHECK(std::abs(r.value("translated_pairing")) <= 1e-12);
  auto s = hyperbolic_nonvanishing(1.5, 4.0);
  CHECK(s.passed);
  CHECK_THROWS_AS(hyperbolic_nonvanishing(1.0, 2.0), Error);
  CHECK_THROWS_AS(hyperbolic_nonvanishing(2.0, geometry::infinity), Error);
}

TEST_CASE("ball mu interval") {
  auto [lo, hi] = mu_interval(2, 1, 4.0 / 3.0, 8.0);
  CHECK(lo == doctest::Approx(-0.5));
  CHECK(hi == doctest::Approx(-0.25));
  try {
    mu_interval(2, 1, 2.0, 2.0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_mu_interval);
  }
  BallWitnessConfig cfg;
  cfg.p = 2.0;
  cfg.q = 4.0;  // 1/p - 1/q = 1/4 <= 1/2
  CHECK_THROWS_AS(ball_witness(cfg), Error);
}

TEST_CASE("ball witness") {
  BallWitnessConfig cfg;
  auto r = ball_witness(cfg);
  CHECK(r.passed);
  const double mu = -3.0 / 8.0;
  CHECK(r.parameters[4].second == doctest::Approx(mu));
  CHECK(r.value("alpha_refinement_change") < 0.01);

  // Fubini oracle: int alpha ^ gamma_t = -int h_t(r)/r dr, and
  // ||d gamma_t||^{q'}_{q'} = int h_t^{q'} r^{1-(mu+2)q'} dr * int |sin/pi|^{q'}
  const double qc = 8.0 / 7.0;
  const auto& ts = r.ladder("t");
  const double ang = geometry::integrate([&](double s) { return std::pow(std::abs(std::sin(s)) / pi, qc); },
                                         std::vector<double>{0.0, pi / 2, pi, 3 * pi / 2, 2 * pi}, 16, 16);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i], w = cfg.tau * t;
    std::vector<double> br{2 * t - w, 2 * t};
    while (br.back() * 10 < 1 - 2 * t) br.push_back(br.back() * 10);
    br.insert(br.end(), {1 - 2 * t, 1 - 2 * t + w});
    const double oracle = -geometry::integrate([&](double x) { return ball_profile(t, cfg.tau, x) / x; }, br, 64, 16);
    CHECK(r.ladder("pairing")[i] == doctest::Approx(oracle).epsilon(1e-9));
    const double d = std::pow(ang * geometry::integrate([&](double x) {
      return std::pow(ball_profile(t, cfg.tau, x), qc) * std::pow(x, 1 - (mu + 2) * qc);
    }, br, 64, 16), 1 / qc);
    CHECK(r.ladder("norm_dgamma_qconj")[i] == doctest::Approx(d).epsilon(1e-5));
  }
  const double at_1e3 = r.ladder("abs_pairing")[1];
  CHECK(at_1e3 >= 0.99);
  CHECK(at_1e3 <= 1.0);
  CHECK(at_1e3 == doctest::Approx(0.9997).epsilon(5e-4));
  // (7((1-2t)^{1/7} - (2t)^{1/7}))^{7/8} / |log 2t| between t = 1e-2 and 1e-4 (plateau part)
  auto plateau = [](double t) { return std::pow(7 * (std::pow(1 - 2 * t, 1.0 / 7) - std::pow(2 * t, 1.0 / 7)), 7.0 / 8) / std::abs(std::log(2 * t)); };
  CHECK(r.value("dgamma_ratio") == doctest::Approx(plateau(1e-4) / plateau(1e-2)).epsilon(1e-3));
  const auto& dg = r.ladder("norm_dgamma_qconj");
  CHECK(dg[1] < dg[0]);
  CHECK(dg[2] < dg[1]);
}

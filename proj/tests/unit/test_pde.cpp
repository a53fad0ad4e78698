#include <doctest.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "lqp/error.hpp"
#include "lqp/forms/autodiff.hpp"
#include "lqp/pde/pde.hpp"

using namespace lqp;
using namespace lqp::pde;
using std::numbers::pi;

namespace {

std::shared_ptr<const geometry::Grid> circle(int n) {
  geometry::GridOptions o;
  o.resolution = {n};
  return std::make_shared<const geometry::Grid>(geometry::build_grid(geometry::ChartDomain::circle(2 * pi), o));
}

std::shared_ptr<const geometry::Grid> torus(int n) {
  geometry::GridOptions o;
  o.resolution = {n, n};
  return std::make_shared<const geometry::Grid>(
      geometry::build_grid(geometry::ChartDomain::torus({2 * pi, 2 * pi}), o));
}

forms::DifferentialForm sin_fn() {
  return forms::make_form(1, 0, [](const auto* x, auto* c) {
    using std::sin;
    c[0] = sin(x[0]);
  }, "sin");
}

VectorXd random_vector(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  VectorXd v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = normal(rng);
  return v;
}

}  // namespace

TEST_CASE("energy values") {
  PLaplaceProblem pr(circle(256), 0, 2.0, sin_fn());
  const VectorXd zero = VectorXd::Zero(256);
  CHECK(energy(zero, pr) == 0.0);
  const VectorXd theta = pr.system().lattice().sample(sin_fn());
  // (1/2) int cos^2 - int sin^2 = pi/2 - pi
  CHECK(energy(theta, pr) == doctest::Approx(-pi / 2).epsilon(1e-8));

  PLaplaceProblem p3(circle(64), 0, 3.0, sin_fn());
  const VectorXd t = random_vector(64, 3);
  const double c = 1.7;
  const double dterm = energy(t, p3) + p3.weight() * p3.source().dot(t);
  const double lin = p3.weight() * p3.source().dot(t);
  CHECK(energy(VectorXd(c * t), p3) == doctest::Approx(std::pow(c, 3.0) * dterm - c * lin).epsilon(1e-12));
}

TEST_CASE("compatibility defects") {
  PLaplaceProblem ok(circle(128), 0, 2.0, sin_fn());
  REQUIRE(ok.defect().size() == 1);
  CHECK(std::abs(ok.defect()[0].value) < 1e-13);
  CHECK(ok.compatible());

  auto three_dx = forms::DifferentialForm::constant(1, 1, {3.0});
  PLaplaceProblem bad(circle(128), 0, 2.0, three_dx);
  CHECK(bad.defect()[0].value == doctest::Approx(6 * pi).epsilon(1e-13));
  CHECK_FALSE(bad.compatible());
  try {
    solve(bad);
    FAIL("expected refusal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::incompatible_source);
  }

  PLaplaceProblem zero(circle(32), 0, 2.0, forms::DifferentialForm::zero(1, 0));
  CHECK(zero.defect()[0].value == 0.0);
  CHECK(zero.compatible());

  // torus 1-forms: harmonic pairings per channel and the exact part
  auto dx = forms::DifferentialForm::constant(2, 1, {1.0, 0.0});
  PLaplaceProblem t1(torus(16), 1, 2.0, dx);
  REQUIRE(t1.defect().size() == 3);
  CHECK(t1.defect()[0].value == doctest::Approx(4 * pi * pi));
  auto exact = forms::make_form(2, 1, [](const auto* x, auto* c) {
    using std::cos;
    c[0] = cos(x[0]);
    c[1] = 0.0 * x[1];
  });
  PLaplaceProblem t2(torus(16), 1, 2.0, exact);
  CHECK(t2.defect()[2].value > 1.0);
  CHECK_FALSE(t2.compatible());
}

TEST_CASE("p = 2 circle matches the Fourier solution") {
  const int n = 256;
  PLaplaceProblem pr(circle(n), 0, 2.0, sin_fn());
  auto sol = solve(pr);
  CHECK(sol.trace.termination == Termination::direct);
  CHECK(sol.trace.final_residual <= 1e-8);
  CHECK(weak_residual(sol.theta, pr) <= 1e-10);
  // discrete Fourier oracle: theta_hat = alpha_hat / |sigma(m h)|^2 with the
  // symbol of the fourth-order staggered difference
  const double h = 2 * pi / n;
  const VectorXd& a = pr.source();
  VectorXd oracle = VectorXd::Zero(n);
  for (int m = 1; m < n; ++m) {
    std::complex<double> ah = 0;
    for (int j = 0; j < n; ++j) ah += a[j] * std::polar(1.0, -2 * pi * m * j / n);
    const double th = m * h;
    const std::complex<double> sig = (std::polar(1.0, -th) - 27.0 + 27.0 * std::polar(1.0, th) -
                                      std::polar(1.0, 2 * th)) / (24.0 * h);
    const std::complex<double> coef = ah / std::norm(sig) / double(n);
    for (int j = 0; j < n; ++j) oracle[j] += (coef * std::polar(1.0, 2 * pi * m * j / n)).real();
  }
  CHECK((sol.theta - oracle).cwiseAbs().maxCoeff() <= 1e-10);
  for (int j = 0; j < n; ++j) CHECK(sol.theta[j] == doctest::Approx(std::sin(j * h)).epsilon(1e-6));
}

TEST_CASE("p = 4 manufactured solution") {
  const int n = 256;
  auto alpha = forms::make_form(1, 0, [](const auto* x, auto* c) {
    using std::cos, std::sin;
    c[0] = 3.0 * cos(x[0]) * cos(x[0]) * sin(x[0]);
  });
  PLaplaceProblem pr(circle(n), 0, 4.0, alpha);
  CHECK(pr.compatible());
  auto sol = solve(pr);
  CAPTURE(sol.trace.iterations);
  CAPTURE(sol.trace.final_residual);
  CHECK(sol.trace.termination == Termination::converged);
  CHECK(sol.trace.energy_nonincreasing());
  const VectorXd dtheta = pr.system().d(0, sol.theta);
  const double h = 2 * pi / n;
  double err2 = 0.0;
  for (int j = 0; j < n; ++j) err2 += h * std::pow(dtheta[j] - std::cos((j + 0.5) * h), 2);
  CHECK(std::sqrt(err2) <= 1e-4);
  CHECK(sol.trace.residuals.back() < sol.trace.residuals.front());
}

TEST_CASE("p < 2 uses the regularized functional and anneals it") {
  PLaplaceProblem pr(circle(64), 0, 1.5, sin_fn());
  auto sol = solve(pr);
  CHECK(sol.trace.termination == Termination::converged);
  CHECK(sol.trace.energy_nonincreasing());
  CHECK(sol.trace.final_residual <= 1e-8);
  CHECK(sol.trace.regularized_residual > 0.0);
}

TEST_CASE("weak gradient vs finite differences") {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    PLaplaceProblem c(circle(64), 0, p, sin_fn());
    CAPTURE(p);
    CHECK(gradient_check(c, random_vector(64, 11), 10, 5) <= 1e-5);
    auto hodge = std::make_shared<const hodge::DiscreteHodgeSystem>(torus(12));
    PLaplaceProblem t(hodge, 1, p, random_vector(hodge->size(1), 1));
    CHECK(gradient_check(t, random_vector(hodge->size(1), 2), 10, 6) <= 1e-5);
  }
}

TEST_CASE("gauge invariance and p = 2 equivalence on the torus") {
  auto sys = std::make_shared<const hodge::DiscreteHodgeSystem>(torus(24));
  // coexact source: alpha = delta beta
  const VectorXd alpha = sys->delta(2, random_vector(sys->size(2), 21));
  for (double p : {2.0, 3.0}) {
    PLaplaceProblem pr(sys, 1, p, alpha);
    REQUIRE(pr.compatible());
    const VectorXd theta = random_vector(sys->size(1), 4);
    const VectorXd zeta = sys->d(0, random_vector(sys->size(0), 5));
    const double e0 = energy(theta, pr);
    CHECK(std::abs(energy(VectorXd(theta + zeta), pr) - e0) <= 1e-10 * std::max(1.0, std::abs(e0)));
  }
  PLaplaceProblem pr(sys, 1, 2.0, alpha);
  auto sol = solve(pr);
  const VectorXd reference = sys->green(1, alpha);
  CHECK((sol.theta - reference).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("weak residual at zero") {
  PLaplaceProblem pr(circle(128), 0, 3.0, sin_fn());
  const VectorXd zero = VectorXd::Zero(128);
  CHECK(weak_residual(zero, pr) ==
        doctest::Approx(pr.source().cwiseAbs().maxCoeff() * std::sqrt(pr.weight())));
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(128, 128);
  CHECK(weak_residual(zero, pr, basis) == doctest::Approx(weak_residual(zero, pr)));
  auto csv = trace_csv(solve(pr).trace);
  CHECK(csv.rfind("iteration,energy,residual,step\n", 0) == 0);
}

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "lqp/hodge/hodge.hpp"

using namespace lqp;
using namespace lqp::hodge;
using Eigen::MatrixXd;

namespace {

std::shared_ptr<const geometry::Grid> torus_grid(std::size_t n) {
  auto t = geometry::ChartDomain::torus({2 * std::numbers::pi, 2 * std::numbers::pi});
  return std::make_shared<const geometry::Grid>(geometry::build_grid(t, {{n, n}}));
}

std::shared_ptr<const geometry::Grid> circle_grid(std::size_t n) {
  auto c = geometry::ChartDomain::circle(2 * std::numbers::pi);
  return std::make_shared<const geometry::Grid>(geometry::build_grid(c, {{n}}));
}

}  // namespace

TEST_CASE("identities on random cochains") {
  for (std::size_t n : {16u, 32u}) {
    DiscreteHodgeSystem s(torus_grid(n));
    auto samples = random_samples(s, 7, 2024);
    auto r = verify_identities(s, samples);
    CAPTURE(n);
    CHECK(r.worst() <= 1e-10);
    CHECK(r.fft_vs_cg <= 1e-9);
    for (double m : r.kernel_margin) CHECK(m > 0.0);
  }
}

TEST_CASE("harmonic dimensions on the torus") {
  DiscreteHodgeSystem s(torus_grid(16));
  CHECK(s.harmonic_dimension(0) == 1);
  CHECK(s.harmonic_dimension(1) == 2);
  CHECK(s.harmonic_dimension(2) == 1);
  for (int k = 0; k <= 2; ++k) {
    CHECK(s.harmonic_dimension(k) == s.harmonic_dimension(2 - k));
    const MatrixXd& b = s.harmonic_basis(k);
    const MatrixXd gram = s.lattice().cell_volume() * b.transpose() * b;
    CHECK((gram - MatrixXd::Identity(b.cols(), b.cols())).norm() < 1e-12);
    CHECK((MatrixXd(s.laplacian_matrix(k)) * b).norm() < 1e-9);
  }
}

TEST_CASE("dense eigen-decomposition agrees with the symbol") {
  DiscreteHodgeSystem s(torus_grid(8));
  for (int k = 0; k <= 2; ++k) {
    const MatrixXd lap(s.laplacian_matrix(k));
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(lap);
    std::vector<double> dense(eig.eigenvalues().data(), eig.eigenvalues().data() + lap.rows());
    std::vector<double> symbol;
    const int channels = k == 1 ? 2 : 1;
    for (int c = 0; c < channels; ++c) symbol.insert(symbol.end(), s.spectrum().begin(), s.spectrum().end());
    std::sort(symbol.begin(), symbol.end());
    REQUIRE(dense.size() == symbol.size());
    for (std::size_t i = 0; i < dense.size(); ++i) CHECK(dense[i] == doctest::Approx(symbol[i]).epsilon(1e-9).scale(1.0));
    int zeros = 0;
    for (double v : dense) zeros += std::abs(v) < 1e-9 * dense.back();
    CHECK(zeros == s.harmonic_dimension(k));

    // sigma_min of [Delta; H], dense
    const MatrixXd& b = s.harmonic_basis(k);
    const MatrixXd h = s.lattice().cell_volume() * b * b.transpose();
    MatrixXd stacked(2 * lap.rows(), lap.cols());
    stacked << lap, h;
    Eigen::JacobiSVD<MatrixXd> svd(stacked);
    const double margin = svd.singularValues().tail(1)[0];
    auto r = verify_identities(s, {});
    CHECK(margin == doctest::Approx(r.kernel_margin[k]).epsilon(1e-9));
  }
}

TEST_CASE("decomposition is orthogonal and complete") {
  DiscreteHodgeSystem s(torus_grid(16));
  auto samples = random_samples(s, 3, 7);
  for (const auto& smp : samples) {
    auto split = hodge_decompose(s, smp.degree, smp.values);
    CHECK(split.reconstruction_error < 1e-12);
    CHECK(split.max_cross_inner < 1e-12);
  }
}

TEST_CASE("image of delta d equals image of delta") {
  DiscreteHodgeSystem s(torus_grid(8));
  for (int k = 0; k <= 2; ++k) {
    auto r = image_identity_check(s, k);
    CAPTURE(k);
    CHECK(r.equal);
    CHECK(r.rank_delta == r.rank_delta_d);
  }
  // delta_1 d_0 on the torus: rank equals nodes minus constants
  CHECK(image_identity_check(s, 0).rank_delta == 63);
}

TEST_CASE("Green operator on the circle") {
  double prev = 0.0;
  for (std::size_t n : {32u, 64u}) {
    DiscreteHodgeSystem s(circle_grid(n));
    Eigen::VectorXd c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = std::cos(2 * std::numbers::pi * double(j) / double(n));
    GreenStats stats;
    const Eigen::VectorXd g = s.green(0, c, GreenSolver::fft, &stats);
    const double err = (g - c).lpNorm<Eigen::Infinity>();
    CHECK(err < 1e-4);
    CHECK(stats.residual < 1e-12);
    if (prev > 0.0) CHECK(prev / err > 14.0);
    prev = err;
    CHECK(s.spectral_gap() == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("CG reports its work") {
  DiscreteHodgeSystem s(torus_grid(16));
  auto samples = random_samples(s, 1, 3);
  GreenStats stats;
  const auto x = s.green(1, samples[1].values, GreenSolver::cg, &stats);
  CHECK(stats.used == GreenSolver::cg);
  CHECK(stats.iterations > 0);
  CHECK(stats.residual < 1e-11);
  CHECK(s.harmonic_projection(1, x).norm() < 1e-12);
}

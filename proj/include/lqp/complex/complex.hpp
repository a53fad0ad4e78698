#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lqp/geometry/geometry.hpp"

namespace lqp::complex {

/// Weighted l^r norm (sum_i w_i |x_i|^r)^{1/r}; max |x_i| for r = inf.
struct LevelNorm {
  Eigen::VectorXd weights;
  double exponent = 2.0;
};

double weighted_norm(const Eigen::VectorXd& x, const Eigen::VectorXd& weights, double r);

/// Cochain complex F^0 -> F^1 -> ... with dense differentials D_k : F^k -> F^{k+1}.
class FiniteCochainComplex {
 public:
  /// Throws unless dimensions chain, weights are positive and D_{k+1} D_k = 0
  /// to 1e-12 relative to the operator sizes.
  FiniteCochainComplex(std::vector<Eigen::MatrixXd> differentials, std::vector<LevelNorm> norms);

  /// Unit weights, exponent 2.
  static FiniteCochainComplex unweighted(std::vector<Eigen::MatrixXd> differentials);

  int levels() const noexcept { return static_cast<int>(norms_.size()); }
  int dim(int k) const;
  /// D_k; a zero map out of the top level.
  const Eigen::MatrixXd& d(int k) const;
  const LevelNorm& norm(int k) const;

 private:
  std::vector<Eigen::MatrixXd> d_;
  std::vector<LevelNorm> norms_;
};

/// Rank with tolerance 1e-10 * max(sigma_max(m), reference).
int numerical_rank(const Eigen::MatrixXd& m, double reference = 0.0);

/// Largest singular value over all differentials of the complex.
double spectral_scale(const FiniteCochainComplex& complex);

/// dim ker D_k - rank D_{k-1}, ranks taken relative to spectral_scale.
int cohomology_dimension(const FiniteCochainComplex& complex, int k);

struct TorsionReport {
  int level = 0;
  /// Always zero: B^k is a finite-dimensional subspace, hence closed.
  int torsion_dimension = 0;
  int cohomology_dimension = 0;
  /// Smallest nonzero singular value of D_{k-1}; a positive value certifies
  /// that B^k is closed with a bounded inverse on it.
  double closedness_margin = 0.0;
};

TorsionReport torsion_check(const FiniteCochainComplex& complex, int k);

enum class ConstantMethod { svd, convex_opt, brute_force };
const char* to_string(ConstantMethod method) noexcept;

struct ConstantReport {
  int level = 0;
  double p = 2.0, q = 2.0;
  double value = 0.0;
  ConstantMethod method = ConstantMethod::svd;
  /// Vector achieving the value (xi in F^{k-1} for both constants).
  Eigen::VectorXd certificate;
  /// False when B^k = 0; value is 0 by convention.
  bool reachable = true;
  /// Constant over all closed theta: equals value when H^k = 0, infinite otherwise.
  double closed_value = 0.0;
};

struct ConstantOptions {
  /// Force a method; default picks svd for p = q = 2 and convex_opt otherwise.
  std::optional<ConstantMethod> method;
  /// Random restarts for convex_opt.
  int restarts = 8;
  /// Sphere samples per dimension for brute_force.
  int samples_per_dim = 4000;
  unsigned seed = 12345;
};

/// inf over z of ||x - K z||_{q,w}, K spanning a subspace (columns).
struct Distance {
  double value = 0.0;
  Eigen::VectorXd residual;
  int iterations = 0;
};
Distance distance_to_span(const Eigen::VectorXd& x, const Eigen::MatrixXd& span,
                          const Eigen::VectorXd& weights, double q);

/// inf over zeta in ker D_{k-1} of ||xi - zeta||_q / ||D_{k-1} xi||_p.
double corrector_ratio(const FiniteCochainComplex& complex, int k, double p, double q,
                       const Eigen::VectorXd& xi);

/// Smallest C with: every theta in B^k has a primitive eta, D eta = theta,
/// ||eta||_q <= C ||theta||_p. Norms use the level weights with exponents (p, q).
ConstantReport solvability_constant(const FiniteCochainComplex& complex, int k, double p, double q,
                                    const ConstantOptions& options = {});

/// Smallest C' with: for all xi in F^{k-1} there is zeta in ker D_{k-1} with
/// ||xi - zeta||_q <= C' ||D xi||_p.
ConstantReport corrector_constant(const FiniteCochainComplex& complex, int k, double p, double q,
                                  const ConstantOptions& options = {});

/// Same constant by dense sampling of the unit sphere of (ker D)^perp followed
/// by a Nelder-Mead polish of the best samples.
ConstantReport brute_force_constant(const FiniteCochainComplex& complex, int k, double p, double q,
                                    const ConstantOptions& options = {});

/// Staggered lattice complex on a circle or torus (see lattice.hpp) up to
/// degree max_degree. The metric must be constant on the grid.
FiniteCochainComplex discretize(const geometry::ChartDomain& domain, const geometry::DiagonalMetric& metric,
                                const geometry::Grid& grid, int max_degree);

void write_text(std::ostream& out, const FiniteCochainComplex& complex);
FiniteCochainComplex read_text(std::istream& in);

}  // namespace lqp::complex

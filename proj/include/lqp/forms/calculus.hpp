#pragma once

// Exterior calculus on DifferentialForm: d, wedge, Hodge star, codifferential,
// pullback, norms and pairings.

#include <functional>
#include <optional>
#include <span>

#include "lqp/forms/form.hpp"
#include "lqp/geometry/geometry.hpp"

namespace lqp::forms {

struct DerivativeOptions {
  /// Step of the pointwise 4th-order central difference used for analytic
  /// forms that carry neither an exact differential nor a jet.
  double step = 1e-3;
};

/// Exterior derivative. Uses, in order: an attached exact differential, the
/// jet, or 4th-order central differences (pointwise for analytic forms, on the
/// grid for sampled ones, one-sided at non-periodic boundaries).
DifferentialForm exterior_derivative(const DifferentialForm& form,
                                     const DerivativeOptions& options = {});

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

DifferentialForm hodge_star(const DifferentialForm& form, const geometry::DiagonalMetric& metric);

/// delta = (-1)^{nk+n+1} * d *.
DifferentialForm codifferential(const DifferentialForm& form, const geometry::DiagonalMetric& metric,
                                const DerivativeOptions& options = {});

/// Interior product i_v with a position-dependent vector field.
DifferentialForm interior_product(
    const DifferentialForm& form,
    std::function<void(std::span<const double> x, std::span<double> v)> field);

/// a * form_a + b * form_b (lazy when either is analytic).
DifferentialForm linear_combination(double a, const DifferentialForm& form_a, double b,
                                    const DifferentialForm& form_b);
DifferentialForm scale(double a, const DifferentialForm& form);

/// Multiplies every coefficient by a scalar function.
DifferentialForm multiply(std::function<double(std::span<const double>)> f,
                          const DifferentialForm& form);

/// Samples a form at the nodes of a grid.
DifferentialForm sample(const DifferentialForm& form, std::shared_ptr<const geometry::Grid> grid,
                        int interpolation_order = 3);

/// Differentiable chart self-map with Jacobian jac[i * n + j] = dF_i/dx_j.
struct ChartMap {
  int dim = 0;
  std::function<void(std::span<const double> x, std::span<double> fx, std::span<double> jac)> apply;
};

/// (F^* form)(x; xi...) = form(F(x); DF xi, ...). Evaluation throws
/// singular_jacobian where |det DF| < 1e-14.
DifferentialForm pullback(const DifferentialForm& form, ChartMap map);

/// |form|_g at x.
double pointwise_norm(const DifferentialForm& form, const geometry::DiagonalMetric& metric,
                      std::span<const double> x);

/// <a, b>_g at x.
double pointwise_inner(const DifferentialForm& a, const DifferentialForm& b,
                       const geometry::DiagonalMetric& metric, std::span<const double> x);

struct FormNormReport {
  double p = 2.0;
  /// (grid quadrature + tail_correction)^{1/p}; the sup over nodes for p = inf.
  double value = 0.0;
  /// Analytic bound on the integral of |form|^p beyond the truncation; zero on
  /// compact domains.
  double tail_correction = 0.0;
  std::size_t resolution = 0;
};

/// Optional analytic tail: p -> integral of |form|_g^p dvol outside the grid box.
using TailBound = std::function<double(double p)>;

FormNormReport lp_norm(const DifferentialForm& form, const geometry::DiagonalMetric& metric,
                       const geometry::Grid& grid, double p, const TailBound& tail = {});

/// Integral of a ^ b over the chart (coordinate orientation, no metric).
double pairing_integral(const DifferentialForm& a, const DifferentialForm& b,
                        const geometry::Grid& grid);

/// Integral of <a, b>_g dvol.
double inner_product_integral(const DifferentialForm& a, const DifferentialForm& b,
                              const geometry::DiagonalMetric& metric, const geometry::Grid& grid);

/// Coefficient values at every grid node, channel-major.
std::vector<double> node_values(const DifferentialForm& form, const geometry::Grid& grid);

/// Max over nodes and channels of |a - b|.
double max_difference(const DifferentialForm& a, const DifferentialForm& b,
                      const geometry::Grid& grid);

}  // namespace lqp::forms

#pragma once

// Cone homotopy K_a, its average over a base density, and the Riesz-kernel
// bound that controls it between L^p and L^q.

#include <array>
#include <string>
#include <vector>

#include "lqp/forms/calculus.hpp"
#include "lqp/forms/form.hpp"
#include "lqp/geometry/geometry.hpp"

namespace lqp::homotopy {

using Point = std::array<double, forms::max_dim>;

/// Base density for the averaged homotopy: T = sum_a w_a K_a.
struct HomotopyConfig {
  int dim = 2;
  std::vector<Point> nodes;
  std::vector<double> weights;
  /// Gauss-Legendre nodes on [0, 1] for the radial integral.
  int radial_order = 32;

  static HomotopyConfig point(int n, Point a, int radial_order = 32);
  /// Tensor Gauss nodes over the ball of `radius` about `center`, weighted by
  /// the bump exp(-1/(1-r^2)) and normalized to sum 1.
  static HomotopyConfig averaged(int n, Point center, double radius, int nodes_per_axis = 4,
                                 int radial_order = 32);
  /// Explicit nodes and weights; weights must be positive and sum to 1.
  static HomotopyConfig explicit_base(int n, std::vector<Point> nodes, std::vector<double> weights,
                                      int radial_order = 32);

  /// Throws unless every node lies strictly inside `domain` and the domain is
  /// convex in its chart coordinates.
  void validate(const geometry::ChartDomain& domain) const;
};

/// (K_a theta)(x) = int_0^1 t^{k-1} (i_{x-a} theta)(a + t(x-a)) dt.
/// Carries a jet when theta does, so d(K_a theta) is exact up to quadrature.
forms::DifferentialForm cone_homotopy(const forms::DifferentialForm& theta, const Point& a,
                                      int radial_order = 32);

forms::DifferentialForm averaged_homotopy(const forms::DifferentialForm& theta,
                                          const HomotopyConfig& config);

/// max over grid nodes and channels of |T d theta + d T theta - theta|.
double homotopy_residual(const forms::DifferentialForm& theta, const HomotopyConfig& config,
                         const geometry::Grid& grid);

enum class Admissibility { admissible, boundary, inadmissible };

const char* to_string(Admissibility a) noexcept;

struct RieszBound {
  /// Young exponent, 1/s = 1 + 1/q - 1/p; zero when that is not positive.
  double s = 0.0;
  /// || |x|^{1-n} ||_{L^s} over the ball of radius diameter/2; zero unless admissible.
  double kernel_norm = 0.0;
  Admissibility admissibility = Admissibility::inadmissible;
  /// The failing inequality when not admissible.
  std::string reason;

  bool admissible() const noexcept { return admissibility == Admissibility::admissible; }
};

RieszBound riesz_bound(int n, double p, double q, double diameter);

/// Euclidean diameter of a convex chart.
double diameter(const geometry::ChartDomain& domain);

struct PrimitiveReport {
  forms::DifferentialForm primitive;
  double norm_primitive = 0.0;  // ||T omega||_q
  double norm_form = 0.0;       // ||omega||_p
  double ratio = 0.0;
  RieszBound bound;
  double closedness = 0.0;  // ||d omega||_p
  double residual = 0.0;    // max |d T omega - omega|
  bool within_bound = false;
};

/// eta = T omega for closed omega, with the L^q / L^p ratio compared against
/// the kernel norm. Rejects non-closed forms and inadmissible exponents.
PrimitiveReport poincare_primitive(const forms::DifferentialForm& omega, double p, double q,
                                   const HomotopyConfig& config, const geometry::Grid& grid,
                                   double closedness_tolerance = 1e-8);

}  // namespace lqp::homotopy

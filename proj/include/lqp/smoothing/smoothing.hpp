#pragma once

// De Rham regularization on one ball chart: the radial deformation h, the
// translations s_v = h^{-1}(h(x) + v), the mollified pullback average R_eps
// and the homotopy A_eps = (I - R_eps) T.

#include <vector>

#include "lqp/forms/calculus.hpp"
#include "lqp/homotopy/homotopy.hpp"

namespace lqp::smoothing {

using homotopy::Point;

/// Radial diffeomorphism of the ball (center c, radius R) onto R^n.
/// In local coordinates u = (x - c)/R: h(u) = H(|u|) u/|u| with H(r) = r for
/// r < 1/3, exp(1/(1 - r^2)) for r >= 2/3, and a quintic Hermite blend between.
class DeRhamDeformation {
 public:
  explicit DeRhamDeformation(int n, Point center = {}, double radius = 1.0);

  int dim() const noexcept { return n_; }
  const Point& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }

  static double profile(double r);
  static double profile_slope(double r);
  /// H^{-1}; bisection-safeguarded Newton inside the blend band.
  static double inverse_profile(double rho);

  /// s_v(x), identity outside the open ball. jac (n x n, row-major) is
  /// filled with D s_v(x) when non-empty.
  Point apply(const Point& x, const Point& v, std::span<double> jac = {}) const;

 private:
  int n_;
  Point center_;
  double radius_;
};

Point s_v_apply(const Point& x, const Point& v, const DeRhamDeformation& deformation);

/// Discrete standard mollifier at scale eps: tensor Gauss nodes on
/// [-eps, eps]^n inside the eps-ball, weighted by exp(-1/(1 - |v/eps|^2)),
/// normalized to sum 1.
struct MollifierSpec {
  int dim = 2;
  double epsilon = 0.1;
  std::vector<Point> nodes;
  std::vector<double> weights;

  static MollifierSpec standard(int n, double epsilon, int nodes_per_axis = 21);
};

/// R_eps omega = sum_j w_j s_{v_j}^* omega; equals omega outside the ball.
forms::DifferentialForm regularize(const forms::DifferentialForm& omega, const DeRhamDeformation& deformation,
                                   const MollifierSpec& mollifier);

/// max over grid nodes of |d R omega - R d omega|.
double commutation_error(const forms::DifferentialForm& omega, const DeRhamDeformation& deformation,
                         const MollifierSpec& mollifier, const geometry::Grid& grid);

struct NormProbe {
  double epsilon = 0.0;
  /// Graph-norm ratio (||R w||_q + ||d R w||_p) / (||w||_q + ||d w||_p) per sample.
  std::vector<double> ratios;
  double max_ratio = 0.0;
};

/// d R w is evaluated as R d w.
NormProbe operator_norm_probe(const std::vector<forms::DifferentialForm>& samples, double p, double q,
                              const DeRhamDeformation& deformation, const MollifierSpec& mollifier,
                              const geometry::Grid& grid);

/// A_eps omega = (I - R_eps) T omega.
forms::DifferentialForm homotopy_A(const forms::DifferentialForm& omega, const DeRhamDeformation& deformation,
                                   const MollifierSpec& mollifier, const homotopy::HomotopyConfig& config);

/// max over grid nodes of |(I - R) omega - d A omega - A d omega|.
double homotopy_A_residual(const forms::DifferentialForm& omega, const DeRhamDeformation& deformation,
                           const MollifierSpec& mollifier, const homotopy::HomotopyConfig& config,
                           const geometry::Grid& grid);

}  // namespace lqp::smoothing

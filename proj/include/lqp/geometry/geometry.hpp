#pragma once

// Model domains, diagonal metrics, quadrature grids and exponent bookkeeping.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lqp::geometry {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

enum class DomainKind { interval, circle, torus, ball, halfplane };

const char* to_string(DomainKind kind) noexcept;

/// A single coordinate chart. Coordinates are Cartesian (x^1..x^n) for
/// interval, circle, torus and ball; (y, z) horocyclic coordinates for the
/// truncated half-plane. Orientation is the coordinate order.
class ChartDomain {
 public:
  static ChartDomain interval(double a, double b);
  static ChartDomain circle(double length);
  static ChartDomain torus(std::vector<double> lengths);
  static ChartDomain ball(int n, double radius = 1.0);
  /// Truncated horocyclic rectangle [-y_half, y_half] x [z_min, z_max].
  static ChartDomain halfplane(double y_half, double z_min, double z_max);

  DomainKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  bool compact() const noexcept;
  bool has_singular_point() const noexcept { return kind_ == DomainKind::ball; }

  /// Per-axis lengths for torus/circle/interval/halfplane boxes.
  const std::vector<double>& lengths() const noexcept { return lengths_; }
  /// Lower corner of the coordinate box (interval/halfplane); zero otherwise.
  const std::vector<double>& lower() const noexcept { return lower_; }
  double radius() const noexcept { return radius_; }
  bool periodic(int axis) const noexcept;

  /// Whether x lies in the closed chart (periodic axes always contain x).
  bool contains(std::span<const double> x, double slack = 1e-12) const;
  /// Whether x lies strictly inside the chart.
  bool interior(std::span<const double> x) const;

  std::string describe() const;

 private:
  ChartDomain() = default;

  DomainKind kind_ = DomainKind::interval;
  int dim_ = 1;
  std::vector<double> lower_;
  std::vector<double> lengths_;
  double radius_ = 0.0;
};

/// Diagonal Riemannian metric g = diag(g_11(x), ..., g_nn(x)).
class DiagonalMetric {
 public:
  using Coefficients = std::function<void(std::span<const double> x, std::span<double> g)>;

  DiagonalMetric(int n, Coefficients coefficients, std::string name);

  static DiagonalMetric euclidean(int n);
  /// e^{2z} dy^2 + dz^2 in (y, z) coordinates.
  static DiagonalMetric horocyclic();

  int dim() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }

  void coefficients(std::span<const double> x, std::span<double> g) const;
  double volume_density(std::span<const double> x) const;

 private:
  int n_;
  Coefficients coefficients_;
  std::string name_;
};

enum class QuadratureRule { automatic, trapezoid, gauss };

struct GridOptions {
  /// Node count per axis. Ball grids: (radial cells, angular nodes) in 2-D,
  /// (radial cells, polar nodes, azimuthal nodes) in 3-D.
  std::vector<int> resolution;
  /// Radial grading exponent; ball only. Radial cell edges are (i/N)^grading.
  std::optional<double> grading;
  QuadratureRule rule = QuadratureRule::automatic;
  /// Nodes per panel for Gauss axes.
  int gauss_order = 8;
};

struct Axis {
  std::vector<double> nodes;
  std::vector<double> weights;
  bool periodic = false;
  bool uniform = false;
  double lo = 0.0, hi = 0.0;
  /// Nodes per Gauss panel; zero on uniform axes.
  int panel_order = 0;
  /// Radial cell edges on graded ball axes.
  std::vector<double> edges;
};

/// Tensor-product quadrature grid. Points are stored in chart coordinates,
/// weights are Lebesgue measure in those coordinates (ball Jacobians folded in).
class Grid {
 public:
  Grid(ChartDomain domain, std::vector<Axis> axes, std::vector<double> points,
       std::vector<double> weights, std::optional<double> grading);

  const ChartDomain& domain() const noexcept { return domain_; }
  int dim() const noexcept { return domain_.dim(); }
  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<Axis>& axes() const noexcept { return axes_; }
  std::vector<std::size_t> shape() const;
  std::optional<double> grading() const noexcept { return grading_; }

  std::span<const double> point(std::size_t i) const {
    return {points_.data() + i * static_cast<std::size_t>(dim()), static_cast<std::size_t>(dim())};
  }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// Whether every axis is uniform and the grid is laid out in chart coordinates,
  /// so that finite differences and interpolation apply.
  bool tensor_uniform() const noexcept;

  /// Flat index of a multi-index (row-major, last axis fastest).
  std::size_t flat(std::span<const std::size_t> index) const;

 private:
  ChartDomain domain_;
  std::vector<Axis> axes_;
  std::vector<double> points_;
  std::vector<double> weights_;
  std::optional<double> grading_;
};

Grid build_grid(const ChartDomain& domain, const GridOptions& options);

/// Quadrature of the volume density over the grid.
double volume(const ChartDomain& domain, const DiagonalMetric& metric, const Grid& grid);

/// g_1 = rho^2 g. Rejects rho <= 0 at any node of `grid`.
DiagonalMetric conformal_rescale(const DiagonalMetric& metric,
                                 std::function<double(std::span<const double>)> rho,
                                 const Grid& grid);

/// Checks g_ii > 0 at every node; throws otherwise.
void validate(const DiagonalMetric& metric, const Grid& grid);

/// Exponents (p, q) in [1, inf] with conjugates and the Young exponent.
class ExponentPair {
 public:
  ExponentPair(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double p_conjugate() const noexcept { return conjugate(p_); }
  double q_conjugate() const noexcept { return conjugate(q_); }
  /// 1/s = 1 + 1/q - 1/p, when positive.
  std::optional<double> young_exponent() const;
  /// 1/p - 1/q.
  double gap() const noexcept { return 1.0 / p_ - 1.0 / q_; }

  static double conjugate(double r) noexcept;

 private:
  double p_, q_;
};

enum class SobolevVerdict { strict, boundary, violated };

const char* to_string(SobolevVerdict verdict) noexcept;

struct SobolevCheck {
  SobolevVerdict verdict;
  /// 1/p - 1/q - 1/n.
  double excess;
  /// Equivalent description: "p >= n", or p < n with q compared to np/(n-p).
  std::string branch;
};

SobolevCheck sobolev_exponent_check(const ExponentPair& pair, int n);

}  // namespace lqp::geometry

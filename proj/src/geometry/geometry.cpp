#include "lqp/geometry/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lqp/error.hpp"
#include "lqp/geometry/quadrature.hpp"

namespace lqp::geometry {

const char* to_string(DomainKind kind) noexcept {
  switch (kind) {
    case DomainKind::interval: return "interval";
    case DomainKind::circle: return "circle";
    case DomainKind::torus: return "torus";
    case DomainKind::ball: return "ball";
    case DomainKind::halfplane: return "halfplane";
  }
  return "unknown";
}

ChartDomain ChartDomain::interval(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && a < b, ErrorCode::invalid_argument,
          "interval bounds must be finite and ordered");
  ChartDomain d;
  d.kind_ = DomainKind::interval;
  d.dim_ = 1;
  d.lower_ = {a};
  d.lengths_ = {b - a};
  return d;
}

ChartDomain ChartDomain::circle(double length) {
  require(std::isfinite(length) && length > 0.0, ErrorCode::invalid_argument,
          "circle length must be positive");
  ChartDomain d;
  d.kind_ = DomainKind::circle;
  d.dim_ = 1;
  d.lower_ = {0.0};
  d.lengths_ = {length};
  return d;
}

ChartDomain ChartDomain::torus(std::vector<double> lengths) {
  require(!lengths.empty() && lengths.size() <= 3, ErrorCode::invalid_argument,
          "torus dimension must be 1, 2 or 3");
  for (double l : lengths)
    require(std::isfinite(l) && l > 0.0, ErrorCode::invalid_argument,
            "torus lengths must be positive");
  ChartDomain d;
  d.kind_ = DomainKind::torus;
  d.dim_ = static_cast<int>(lengths.size());
  d.lower_.assign(lengths.size(), 0.0);
  d.lengths_ = std::move(lengths);
  return d;
}

ChartDomain ChartDomain::ball(int n, double radius) {
  require(n == 2 || n == 3, ErrorCode::unsupported, "ball dimension must be 2 or 3");
  require(std::isfinite(radius) && radius > 0.0, ErrorCode::invalid_argument,
          "ball radius must be positive");
  ChartDomain d;
  d.kind_ = DomainKind::ball;
  d.dim_ = n;
  d.lower_.assign(n, -radius);
  d.lengths_.assign(n, 2.0 * radius);
  d.radius_ = radius;
  return d;
}

ChartDomain ChartDomain::halfplane(double y_half, double z_min, double z_max) {
  require(std::isfinite(y_half) && y_half > 0.0, ErrorCode::invalid_argument,
          "half-plane y truncation must be positive");
  require(std::isfinite(z_min) && std::isfinite(z_max) && z_min < z_max,
          ErrorCode::invalid_argument, "half-plane z truncation must be finite and ordered");
  ChartDomain d;
  d.kind_ = DomainKind::halfplane;
  d.dim_ = 2;
  d.lower_ = {-y_half, z_min};
  d.lengths_ = {2.0 * y_half, z_max - z_min};
  return d;
}

bool ChartDomain::compact() const noexcept {
  return kind_ == DomainKind::circle || kind_ == DomainKind::torus;
}

bool ChartDomain::periodic(int) const noexcept {
  return kind_ == DomainKind::circle || kind_ == DomainKind::torus;
}

bool ChartDomain::contains(std::span<const double> x, double slack) const {
  if (static_cast<int>(x.size()) != dim_) return false;
  switch (kind_) {
    case DomainKind::circle:
    case DomainKind::torus: return true;
    case DomainKind::ball: {
      double r2 = 0.0;
      for (double xi : x) r2 += xi * xi;
      return std::sqrt(r2) <= radius_ + slack;
    }
    case DomainKind::interval:
    case DomainKind::halfplane:
      for (int i = 0; i < dim_; ++i)
        if (x[i] < lower_[i] - slack || x[i] > lower_[i] + lengths_[i] + slack) return false;
      return true;
  }
  return false;
}

bool ChartDomain::interior(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) return false;
  switch (kind_) {
    case DomainKind::circle:
    case DomainKind::torus: return true;
    case DomainKind::ball: {
      double r2 = 0.0;
      for (double xi : x) r2 += xi * xi;
      return std::sqrt(r2) < radius_;
    }
    case DomainKind::interval:
    case DomainKind::halfplane:
      for (int i = 0; i < dim_; ++i)
        if (x[i] <= lower_[i] || x[i] >= lower_[i] + lengths_[i]) return false;
      return true;
  }
  return false;
}

std::string ChartDomain::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << "(n=" << dim_;
  switch (kind_) {
    case DomainKind::interval: os << ", [" << lower_[0] << ", " << lower_[0] + lengths_[0] << "]"; break;
    case DomainKind::circle: os << ", L=" << lengths_[0]; break;
    case DomainKind::torus:
      os << ", L=(";
      for (std::size_t i = 0; i < lengths_.size(); ++i) os << (i ? "," : "") << lengths_[i];
      os << ")";
      break;
    case DomainKind::ball: os << ", R=" << radius_; break;
    case DomainKind::halfplane:
      os << ", |y|<=" << lengths_[0] / 2 << ", z in [" << lower_[1] << ", "
         << lower_[1] + lengths_[1] << "]";
      break;
  }
  os << ")";
  return os.str();
}

DiagonalMetric::DiagonalMetric(int n, Coefficients coefficients, std::string name)
    : n_(n), coefficients_(std::move(coefficients)), name_(std::move(name)) {
  require(n >= 1, ErrorCode::invalid_argument, "metric dimension must be positive");
  require(static_cast<bool>(coefficients_), ErrorCode::invalid_argument,
          "metric needs coefficient functions");
}

DiagonalMetric DiagonalMetric::euclidean(int n) {
  return DiagonalMetric(
      n, [](std::span<const double>, std::span<double> g) { std::fill(g.begin(), g.end(), 1.0); },
      "euclidean");
}

DiagonalMetric DiagonalMetric::horocyclic() {
  return DiagonalMetric(
      2,
      [](std::span<const double> x, std::span<double> g) {
        g[0] = std::exp(2.0 * x[1]);
        g[1] = 1.0;
      },
      "horocyclic");
}

void DiagonalMetric::coefficients(std::span<const double> x, std::span<double> g) const {
  coefficients_(x, g);
}

double DiagonalMetric::volume_density(std::span<const double> x) const {
  double g[3];
  coefficients_(x, std::span<double>(g, n_));
  double prod = 1.0;
  for (int i = 0; i < n_; ++i) prod *= g[i];
  return std::sqrt(prod);
}

Grid::Grid(ChartDomain domain, std::vector<Axis> axes, std::vector<double> points,
           std::vector<double> weights, std::optional<double> grading)
    : domain_(std::move(domain)),
      axes_(std::move(axes)),
      points_(std::move(points)),
      weights_(std::move(weights)),
      grading_(grading) {}

std::vector<std::size_t> Grid::shape() const {
  std::vector<std::size_t> s;
  for (const auto& a : axes_) s.push_back(a.nodes.size());
  return s;
}

bool Grid::tensor_uniform() const noexcept {
  if (domain_.kind() == DomainKind::ball) return false;
  return std::all_of(axes_.begin(), axes_.end(), [](const Axis& a) { return a.uniform; });
}

std::size_t Grid::flat(std::span<const std::size_t> index) const {
  std::size_t f = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) f = f * axes_[a].nodes.size() + index[a];
  return f;
}

namespace {

Axis uniform_axis(double lo, double length, int count, bool periodic) {
  Axis axis;
  axis.periodic = periodic;
  axis.uniform = true;
  axis.lo = lo;
  axis.hi = lo + length;
  if (periodic) {
    const double h = length / count;
    for (int i = 0; i < count; ++i) {
      axis.nodes.push_back(lo + i * h);
      axis.weights.push_back(h);
    }
  } else {
    const double h = length / (count - 1);
    for (int i = 0; i < count; ++i) {
      axis.nodes.push_back(lo + i * h);
      axis.weights.push_back((i == 0 || i == count - 1) ? 0.5 * h : h);
    }
  }
  return axis;
}

Axis gauss_axis(double lo, double length, int count, int order) {
  require(count % order == 0, ErrorCode::invalid_argument,
          "Gauss axis node count must be a multiple of the panel order");
  Axis axis;
  axis.lo = lo;
  axis.hi = lo + length;
  axis.panel_order = order;
  const int panels = count / order;
  const double width = length / panels;
  for (int p = 0; p < panels; ++p) {
    const Rule1d rule = gauss_legendre(order, lo + p * width, lo + (p + 1) * width);
    axis.nodes.insert(axis.nodes.end(), rule.nodes.begin(), rule.nodes.end());
    axis.weights.insert(axis.weights.end(), rule.weights.begin(), rule.weights.end());
  }
  return axis;
}

Grid build_ball_grid(const ChartDomain& domain, const GridOptions& options) {
  const int n = domain.dim();
  const double radius = domain.radius();
  const double g = options.grading.value_or(2.0);
  require(g >= 1.0, ErrorCode::invalid_argument, "radial grading exponent must be >= 1");
  const int cells = options.resolution[0];
  // Integer g: exact for the Jacobian g u^{gn-1} times low-degree radial polynomials.
  int per_cell = 4;
  if (std::floor(g) == g) per_cell = std::clamp(static_cast<int>(std::ceil(g * n / 2.0)), 4, 8);

  Axis radial;
  radial.lo = 0.0;
  radial.hi = radius;
  for (int i = 0; i <= cells; ++i) radial.edges.push_back(radius * std::pow(double(i) / cells, g));
  for (int i = 0; i < cells; ++i) {
    const Rule1d rule = gauss_legendre(per_cell, double(i) / cells, double(i + 1) / cells);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double u = rule.nodes[j];
      radial.nodes.push_back(radius * std::pow(u, g));
      radial.weights.push_back(rule.weights[j] * radius * g * std::pow(u, g - 1.0));
    }
  }

  std::vector<Axis> axes{radial};
  std::vector<double> points, weights;
  if (n == 2) {
    Axis angular = uniform_axis(0.0, 2.0 * std::numbers::pi, options.resolution[1], true);
    axes.push_back(angular);
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
      const double r = radial.nodes[i];
      for (std::size_t j = 0; j < angular.nodes.size(); ++j) {
        points.push_back(r * std::cos(angular.nodes[j]));
        points.push_back(r * std::sin(angular.nodes[j]));
        weights.push_back(radial.weights[i] * r * angular.weights[j]);
      }
    }
  } else {
    // Polar axis parametrized by c = cos(polar angle), so dc carries sin.
    Axis polar;
    const Rule1d rule = gauss_legendre(options.resolution[1], -1.0, 1.0);
    polar.nodes = rule.nodes;
    polar.weights = rule.weights;
    polar.lo = -1.0;
    polar.hi = 1.0;
    Axis azimuth = uniform_axis(0.0, 2.0 * std::numbers::pi, options.resolution[2], true);
    axes.push_back(polar);
    axes.push_back(azimuth);
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
      const double r = radial.nodes[i];
      for (std::size_t j = 0; j < polar.nodes.size(); ++j) {
        const double c = polar.nodes[j], s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (std::size_t l = 0; l < azimuth.nodes.size(); ++l) {
          points.push_back(r * s * std::cos(azimuth.nodes[l]));
          points.push_back(r * s * std::sin(azimuth.nodes[l]));
          points.push_back(r * c);
          weights.push_back(radial.weights[i] * r * r * polar.weights[j] * azimuth.weights[l]);
        }
      }
    }
  }
  return Grid(domain, std::move(axes), std::move(points), std::move(weights), g);
}

}  // namespace

Grid build_grid(const ChartDomain& domain, const GridOptions& options) {
  const int n = domain.dim();
  require(static_cast<int>(options.resolution.size()) == n, ErrorCode::invalid_argument,
          "resolution must give one count per axis");
  for (int r : options.resolution)
    require(r >= 4, ErrorCode::invalid_argument, "resolution must be at least 4 per axis");
  require(!options.grading || domain.has_singular_point(), ErrorCode::invalid_argument,
          "radial grading needs a domain with a singular point");

  if (domain.kind() == DomainKind::ball) return build_ball_grid(domain, options);

  std::vector<Axis> axes;
  for (int a = 0; a < n; ++a) {
    const bool periodic = domain.periodic(a);
    QuadratureRule rule = options.rule;
    if (rule == QuadratureRule::automatic) rule = QuadratureRule::trapezoid;
    require(!(periodic && rule == QuadratureRule::gauss), ErrorCode::invalid_argument,
            "periodic axes use the uniform rule");
    if (rule == QuadratureRule::gauss)
      axes.push_back(gauss_axis(domain.lower()[a], domain.lengths()[a], options.resolution[a],
                                options.gauss_order));
    else
      axes.push_back(uniform_axis(domain.lower()[a], domain.lengths()[a], options.resolution[a],
                                  periodic));
  }

  std::size_t total = 1;
  for (const auto& a : axes) total *= a.nodes.size();
  std::vector<double> points;
  std::vector<double> weights;
  points.reserve(total * n);
  weights.reserve(total);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t f = 0; f < total; ++f) {
    double w = 1.0;
    for (int a = 0; a < n; ++a) {
      points.push_back(axes[a].nodes[idx[a]]);
      w *= axes[a].weights[idx[a]];
    }
    weights.push_back(w);
    for (int a = n - 1; a >= 0; --a) {
      if (++idx[a] < axes[a].nodes.size()) break;
      idx[a] = 0;
    }
  }
  return Grid(domain, std::move(axes), std::move(points), std::move(weights), std::nullopt);
}

double volume(const ChartDomain& domain, const DiagonalMetric& metric, const Grid& grid) {
  require(domain.dim() == metric.dim() && grid.dim() == domain.dim(), ErrorCode::invalid_argument,
          "domain, metric and grid dimensions differ");
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    total += grid.weight(i) * metric.volume_density(grid.point(i));
  return total;
}

void validate(const DiagonalMetric& metric, const Grid& grid) {
  require(metric.dim() == grid.dim(), ErrorCode::invalid_argument, "metric/grid dimension mismatch");
  double g[3];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    metric.coefficients(grid.point(i), std::span<double>(g, metric.dim()));
    for (int a = 0; a < metric.dim(); ++a)
      require(g[a] > 0.0 && std::isfinite(g[a]), ErrorCode::domain_error,
              "metric coefficient is not positive at a grid node");
  }
}

DiagonalMetric conformal_rescale(const DiagonalMetric& metric,
                                 std::function<double(std::span<const double>)> rho,
                                 const Grid& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = rho(grid.point(i));
    require(r > 0.0 && std::isfinite(r), ErrorCode::domain_error,
            "conformal factor must be positive at every node");
  }
  const int n = metric.dim();
  return DiagonalMetric(
      n,
      [metric, rho = std::move(rho), n](std::span<const double> x, std::span<double> g) {
        metric.coefficients(x, g);
        const double r = rho(x);
        for (int a = 0; a < n; ++a) g[a] *= r * r;
      },
      "conformal(" + metric.name() + ")");
}

ExponentPair::ExponentPair(double p, double q) : p_(p), q_(q) {
  require(p >= 1.0 && q >= 1.0, ErrorCode::invalid_argument, "exponents must lie in [1, inf]");
}

double ExponentPair::conjugate(double r) noexcept {
  if (r == 1.0) return infinity;
  if (std::isinf(r)) return 1.0;
  return r / (r - 1.0);
}

std::optional<double> ExponentPair::young_exponent() const {
  const double inv = 1.0 + 1.0 / q_ - 1.0 / p_;
  if (inv <= 0.0) return std::nullopt;
  return 1.0 / inv;
}

const char* to_string(SobolevVerdict verdict) noexcept {
  switch (verdict) {
    case SobolevVerdict::strict: return "strict";
    case SobolevVerdict::boundary: return "boundary";
    case SobolevVerdict::violated: return "violated";
  }
  return "unknown";
}

SobolevCheck sobolev_exponent_check(const ExponentPair& pair, int n) {
  require(n >= 1, ErrorCode::invalid_argument, "dimension must be positive");
  constexpr double tol = 1e-12;
  const double excess = pair.gap() - 1.0 / n;
  SobolevCheck check{SobolevVerdict::strict, excess, {}};
  if (std::abs(excess) <= tol)
    check.verdict = SobolevVerdict::boundary;
  else if (excess > 0.0)
    check.verdict = SobolevVerdict::violated;

  const double p = pair.p(), q = pair.q();
  if (p >= n) {
    check.branch = "p >= n";
  } else {
    const double critical = n * p / (n - p);
    if (std::abs(q - critical) <= tol * std::max(1.0, critical))
      check.branch = "p < n, q = np/(n-p)";
    else if (q < critical)
      check.branch = "p < n, q < np/(n-p)";
    else
      check.branch = "p < n, q > np/(n-p)";
  }
  return check;
}

}  // namespace lqp::geometry

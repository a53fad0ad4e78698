#include "lqp/homotopy/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "lqp/error.hpp"
#include "lqp/forms/multiindex.hpp"
#include "lqp/geometry/quadrature.hpp"

namespace lqp::homotopy {

using forms::DifferentialForm;
using forms::Mask;

namespace {

void check_base(int n, const std::vector<Point>& nodes, const std::vector<double>& weights) {
  require(n >= 1 && n <= forms::max_dim, ErrorCode::unsupported, "dimension must be 1, 2 or 3");
  require(!nodes.empty() && nodes.size() == weights.size(), ErrorCode::invalid_argument,
          "homotopy base needs one weight per node");
  double sum = 0.0;
  for (double w : weights) {
    require(w > 0.0, ErrorCode::invalid_argument, "base weights must be positive");
    sum += w;
  }
  require(std::abs(sum - 1.0) <= 1e-12, ErrorCode::invalid_argument, "base weights must sum to 1");
}

}  // namespace

HomotopyConfig HomotopyConfig::point(int n, Point a, int radial_order) {
  return explicit_base(n, {a}, {1.0}, radial_order);
}

HomotopyConfig HomotopyConfig::averaged(int n, Point center, double radius, int nodes_per_axis,
                                        int radial_order) {
  require(radius > 0.0, ErrorCode::invalid_argument, "base radius must be positive");
  require(nodes_per_axis >= 1, ErrorCode::invalid_argument, "need at least one node per axis");
  const auto& rule = geometry::gauss_legendre(nodes_per_axis);
  std::vector<Point> nodes;
  std::vector<double> weights;
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= rule.nodes.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    Point v{};
    double w = 1.0, r2 = 0.0;
    for (int a = 0; a < n; ++a) {
      const std::size_t i = rest % rule.nodes.size();
      rest /= rule.nodes.size();
      v[a] = rule.nodes[i];
      w *= rule.weights[i];
      r2 += v[a] * v[a];
    }
    if (r2 >= 1.0) continue;
    Point x{};
    for (int a = 0; a < n; ++a) x[a] = center[a] + radius * v[a];
    nodes.push_back(x);
    weights.push_back(w * std::exp(-1.0 / (1.0 - r2)));
  }
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= sum;
  return explicit_base(n, std::move(nodes), std::move(weights), radial_order);
}

HomotopyConfig HomotopyConfig::explicit_base(int n, std::vector<Point> nodes, std::vector<double> weights,
                                             int radial_order) {
  check_base(n, nodes, weights);
  require(radial_order >= 1, ErrorCode::invalid_argument, "radial order must be positive");
  HomotopyConfig c;
  c.dim = n;
  c.nodes = std::move(nodes);
  c.weights = std::move(weights);
  c.radial_order = radial_order;
  return c;
}

void HomotopyConfig::validate(const geometry::ChartDomain& domain) const {
  check_base(dim, nodes, weights);
  require(domain.dim() == dim, ErrorCode::invalid_argument, "homotopy base and domain differ in dimension");
  const auto kind = domain.kind();
  require(kind == geometry::DomainKind::ball || kind == geometry::DomainKind::interval ||
              kind == geometry::DomainKind::halfplane,
          ErrorCode::unsupported, "homotopy needs a chart that is convex in its coordinates");
  for (const auto& a : nodes)
    require(domain.interior(std::span<const double>(a.data(), dim)), ErrorCode::domain_error,
            "homotopy base point outside the domain");
}

DifferentialForm cone_homotopy(const DifferentialForm& theta, const Point& a, int radial_order) {
  const int n = theta.dim(), k = theta.degree();
  require(k >= 1, ErrorCode::degree_mismatch, "cone homotopy needs a form of degree >= 1");
  require(radial_order >= 1, ErrorCode::invalid_argument, "radial order must be positive");

  // Contraction table: out[J] += sign * v_i * theta[I] with I = J + {i}.
  struct Term {
    int out, in, axis, sign;
  };
  std::vector<Term> terms;
  const auto& out_basis = forms::basis(n, k - 1);
  for (std::size_t J = 0; J < out_basis.size(); ++J)
    for (int i = 0; i < n; ++i) {
      const Mask bit = Mask{1} << i;
      if (out_basis[J] & bit) continue;
      const Mask I = out_basis[J] | bit;
      terms.push_back({int(J), forms::index_of(n, I), i, forms::rank_below(I, i) % 2 ? -1 : 1});
    }
  const auto rule = geometry::gauss_legendre(radial_order, 0.0, 1.0);
  const int in_ch = theta.channels();

  auto eval = [=](std::span<const double> x, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    std::array<double, forms::max_dim> y{}, v{};
    std::array<double, 3> c{};
    for (int j = 0; j < n; ++j) v[j] = x[j] - a[j];
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = rule.nodes[q];
      const double f = rule.weights[q] * std::pow(t, k - 1);
      for (int j = 0; j < n; ++j) y[j] = a[j] + t * v[j];
      theta.evaluate(std::span<const double>(y.data(), n), std::span<double>(c.data(), in_ch));
      for (const auto& term : terms) out[term.out] += f * term.sign * v[term.axis] * c[term.in];
    }
  };
  DifferentialForm::Jet jet;
  if (theta.has_jet())
    jet = [=](std::span<const double> x, std::span<double> out, std::span<double> grads) {
      std::fill(out.begin(), out.end(), 0.0);
      std::fill(grads.begin(), grads.end(), 0.0);
      std::array<double, forms::max_dim> y{}, v{};
      std::array<double, 3> c{};
      std::array<double, 3 * forms::max_dim> g{};
      for (int j = 0; j < n; ++j) v[j] = x[j] - a[j];
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = rule.nodes[q];
        const double f = rule.weights[q] * std::pow(t, k - 1);
        for (int j = 0; j < n; ++j) y[j] = a[j] + t * v[j];
        theta.jet(std::span<const double>(y.data(), n), std::span<double>(c.data(), in_ch),
                  std::span<double>(g.data(), in_ch * n));
        for (const auto& term : terms) {
          const double s = f * term.sign;
          out[term.out] += s * v[term.axis] * c[term.in];
          grads[term.out * n + term.axis] += s * c[term.in];
          for (int m = 0; m < n; ++m) grads[term.out * n + m] += s * v[term.axis] * t * g[term.in * n + m];
        }
      }
    };
  return DifferentialForm::analytic(n, k - 1, eval, jet, {}, "K(" + theta.label() + ")");
}

DifferentialForm averaged_homotopy(const DifferentialForm& theta, const HomotopyConfig& config) {
  check_base(config.dim, config.nodes, config.weights);
  require(theta.dim() == config.dim, ErrorCode::invalid_argument, "form and homotopy base differ in dimension");
  if (config.nodes.size() == 1) return cone_homotopy(theta, config.nodes[0], config.radial_order);

  std::vector<DifferentialForm> cones;
  for (const auto& a : config.nodes) cones.push_back(cone_homotopy(theta, a, config.radial_order));
  const std::vector<double> w = config.weights;
  const int n = theta.dim(), k = theta.degree();
  const int ch = forms::binomial(n, k - 1);

  auto eval = [cones, w, ch](std::span<const double> x, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    std::array<double, 3> c{};
    for (std::size_t i = 0; i < cones.size(); ++i) {
      cones[i].evaluate(x, std::span<double>(c.data(), ch));
      for (int j = 0; j < ch; ++j) out[j] += w[i] * c[j];
    }
  };
  DifferentialForm::Jet jet;
  if (theta.has_jet())
    jet = [cones, w, ch, n](std::span<const double> x, std::span<double> out, std::span<double> grads) {
      std::fill(out.begin(), out.end(), 0.0);
      std::fill(grads.begin(), grads.end(), 0.0);
      std::array<double, 3> c{};
      std::array<double, 3 * forms::max_dim> g{};
      for (std::size_t i = 0; i < cones.size(); ++i) {
        cones[i].jet(x, std::span<double>(c.data(), ch), std::span<double>(g.data(), ch * n));
        for (int j = 0; j < ch; ++j) out[j] += w[i] * c[j];
        for (int j = 0; j < ch * n; ++j) grads[j] += w[i] * g[j];
      }
    };
  return DifferentialForm::analytic(n, k - 1, eval, jet, {}, "T(" + theta.label() + ")");
}

double homotopy_residual(const DifferentialForm& theta, const HomotopyConfig& config,
                         const geometry::Grid& grid) {
  config.validate(grid.domain());
  const int n = theta.dim(), k = theta.degree();
  const DifferentialForm d_t = forms::exterior_derivative(averaged_homotopy(theta, config));
  std::optional<DifferentialForm> t_d;
  if (k < n) {
    const DifferentialForm dtheta =
        theta.exact_differential() ? *theta.exact_differential() : forms::exterior_derivative(theta);
    t_d = averaged_homotopy(dtheta, config);
  }
  const int ch = theta.channels();
  std::vector<double> a(ch), b(ch), c(ch);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid.point(i);
    theta.evaluate(x, a);
    d_t.evaluate(x, b);
    if (t_d) t_d->evaluate(x, c);
    for (int j = 0; j < ch; ++j) worst = std::max(worst, std::abs((t_d ? c[j] : 0.0) + b[j] - a[j]));
  }
  return worst;
}

const char* to_string(Admissibility a) noexcept {
  switch (a) {
    case Admissibility::admissible: return "admissible";
    case Admissibility::boundary: return "boundary";
    case Admissibility::inadmissible: return "inadmissible";
  }
  return "?";
}

RieszBound riesz_bound(int n, double p, double q, double diameter) {
  require(n >= 1 && n <= 3, ErrorCode::unsupported, "dimension must be 1, 2 or 3");
  require(p >= 1.0 && q >= 1.0, ErrorCode::invalid_argument, "exponents must be >= 1");
  require(diameter > 0.0, ErrorCode::invalid_argument, "diameter must be positive");
  RieszBound r;
  const double inv_p = 1.0 / p, inv_q = 1.0 / q;
  const double inv_s = 1.0 + inv_q - inv_p;
  if (inv_s <= 0.0) {
    r.reason = "1 + 1/q - 1/p <= 0";
    return r;
  }
  r.s = 1.0 / inv_s;
  const double gap = inv_p - inv_q;
  if (p > 1.0 && std::abs(gap - 1.0 / n) <= 1e-12) {
    r.admissibility = Admissibility::boundary;
    r.reason = "1/p - 1/q = 1/n (boundary case, no explicit constant)";
    return r;
  }
  if (r.s * (1.0 - n) <= -n) {
    r.reason = "s(1-n) <= -n, equivalently 1/p - 1/q >= 1/n";
    return r;
  }
  r.admissibility = Admissibility::admissible;
  const double sphere = n == 1 ? 2.0 : n == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
  const double beta = n - (n - 1) * r.s;
  const double radius = 0.5 * diameter;
  r.kernel_norm = std::pow(sphere * std::pow(radius, beta) / beta, inv_s);
  return r;
}

double diameter(const geometry::ChartDomain& domain) {
  switch (domain.kind()) {
    case geometry::DomainKind::ball: return 2.0 * domain.radius();
    case geometry::DomainKind::interval:
    case geometry::DomainKind::halfplane: {
      double s = 0.0;
      for (double l : domain.lengths()) s += l * l;
      return std::sqrt(s);
    }
    default: fail(ErrorCode::unsupported, "diameter needs a convex chart");
  }
}

PrimitiveReport poincare_primitive(const DifferentialForm& omega, double p, double q,
                                   const HomotopyConfig& config, const geometry::Grid& grid,
                                   double closedness_tolerance) {
  config.validate(grid.domain());
  const int n = omega.dim();
  const auto metric = geometry::DiagonalMetric::euclidean(n);
  RieszBound bound = riesz_bound(n, p, q, diameter(grid.domain()));
  if (bound.admissibility == Admissibility::inadmissible)
    fail(ErrorCode::inadmissible_exponents,
         "exponents (" + std::to_string(p) + ", " + std::to_string(q) + ") inadmissible: " + bound.reason +
             "; the ball witness shows the primitive can fail to exist");
  const double norm_form = forms::lp_norm(omega, metric, grid, p).value;
  double closedness = 0.0;
  if (omega.degree() < n) {
    closedness = forms::lp_norm(forms::exterior_derivative(omega), metric, grid, p).value;
    require(closedness <= closedness_tolerance * std::max(1.0, norm_form), ErrorCode::invalid_argument,
            "form is not closed: ||d omega||_p = " + std::to_string(closedness));
  }
  DifferentialForm eta = averaged_homotopy(omega, config);
  const double norm_eta = forms::lp_norm(eta, metric, grid, q).value;
  const double residual = forms::max_difference(forms::exterior_derivative(eta), omega, grid);
  const double ratio = norm_form > 0.0 ? norm_eta / norm_form : 0.0;
  return PrimitiveReport{eta,      norm_eta,   norm_form, ratio, bound, closedness, residual,
                         bound.admissible() && ratio <= bound.kernel_norm};
}

}  // namespace lqp::homotopy

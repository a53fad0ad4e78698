#include "lqp/smoothing/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lqp/error.hpp"
#include "lqp/geometry/quadrature.hpp"

namespace lqp::smoothing {

using forms::DifferentialForm;

namespace {

constexpr double band_lo = 1.0 / 3.0;
constexpr double band_hi = 2.0 / 3.0;
// Beyond this exponent H overflows and s_v is the identity to rounding.
constexpr double max_exponent = 700.0;
// H is only C^2 at the band ends, so difference quotients of pulled-back
// forms use a short step to keep the O(h^2) kink error small.
const forms::DerivativeOptions kink_step{1e-5};

struct Quintic {
  double c[6];
  double width;
};

// Hermite quintic matching value, slope and curvature of r and exp(1/(1-r^2)).
const Quintic& blend() {
  static const Quintic q = [] {
    const double w = band_hi - band_lo;
    const double r = band_hi, m = 1.0 - r * r;
    const double u1 = 2.0 * r / (m * m), u2 = 2.0 / (m * m) + 8.0 * r * r / (m * m * m);
    const double e = std::exp(1.0 / m);
    const double y1 = e, d1 = e * u1, dd1 = e * (u1 * u1 + u2);
    Quintic out{};
    out.width = w;
    out.c[0] = band_lo;
    out.c[1] = w;
    out.c[2] = 0.0;
    const double a = y1 - out.c[0] - out.c[1] - out.c[2];
    const double b = w * d1 - out.c[1] - 2.0 * out.c[2];
    const double c = w * w * dd1 - 2.0 * out.c[2];
    out.c[3] = 10.0 * a - 4.0 * b + 0.5 * c;
    out.c[4] = -15.0 * a + 7.0 * b - c;
    out.c[5] = 6.0 * a - 3.0 * b + 0.5 * c;
    return out;
  }();
  return q;
}

double norm(const Point& x, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += x[i] * x[i];
  return std::sqrt(s);
}

void identity(std::span<double> jac, int n) {
  if (jac.empty()) return;
  std::fill(jac.begin(), jac.end(), 0.0);
  for (int i = 0; i < n; ++i) jac[i * n + i] = 1.0;
}

}  // namespace

DeRhamDeformation::DeRhamDeformation(int n, Point center, double radius)
    : n_(n), center_(center), radius_(radius) {
  require(n >= 1 && n <= forms::max_dim, ErrorCode::unsupported, "dimension must be 1, 2 or 3");
  require(radius > 0.0, ErrorCode::invalid_argument, "deformation radius must be positive");
}

double DeRhamDeformation::profile(double r) {
  if (r < band_lo) return r;
  if (r >= 1.0) return geometry::infinity;
  if (r >= band_hi) return std::exp(1.0 / (1.0 - r * r));
  const auto& q = blend();
  const double s = (r - band_lo) / q.width;
  return q.c[0] + s * (q.c[1] + s * (q.c[2] + s * (q.c[3] + s * (q.c[4] + s * q.c[5]))));
}

double DeRhamDeformation::profile_slope(double r) {
  if (r < band_lo) return 1.0;
  if (r >= 1.0) return geometry::infinity;
  if (r >= band_hi) {
    const double m = 1.0 - r * r;
    return std::exp(1.0 / m) * 2.0 * r / (m * m);
  }
  const auto& q = blend();
  const double s = (r - band_lo) / q.width;
  return (q.c[1] + s * (2.0 * q.c[2] + s * (3.0 * q.c[3] + s * (4.0 * q.c[4] + s * 5.0 * q.c[5])))) / q.width;
}

double DeRhamDeformation::inverse_profile(double rho) {
  require(rho >= 0.0, ErrorCode::invalid_argument, "profile values are nonnegative");
  if (rho < band_lo) return rho;
  if (std::isinf(rho)) return 1.0;
  if (rho >= profile(band_hi)) return std::sqrt(1.0 - 1.0 / std::log(rho));
  double lo = band_lo, hi = band_hi, r = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = profile(r) - rho;
    if (std::abs(f) <= 1e-15 * rho) return r;
    (f > 0.0 ? hi : lo) = r;
    if (hi - lo <= 4e-16 * hi) return 0.5 * (lo + hi);
    const double step = r - f / profile_slope(r);
    r = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
  }
  std::ostringstream msg;
  msg << "profile inversion did not converge for rho = " << rho << " in bracket [" << lo << ", " << hi << "]";
  fail(ErrorCode::non_convergence, msg.str());
}

Point DeRhamDeformation::apply(const Point& x, const Point& v, std::span<double> jac) const {
  const int n = n_;
  Point u{};
  for (int i = 0; i < n; ++i) u[i] = (x[i] - center_[i]) / radius_;
  const double r = norm(u, n);
  if (r >= 1.0 || 1.0 / (1.0 - r * r) > max_exponent) {
    identity(jac, n);
    return x;
  }
  const double hr = profile(r);
  const double scale = r > 0.0 ? hr / r : 1.0;
  Point z{};
  for (int i = 0; i < n; ++i) z[i] = scale * u[i] + v[i];
  const double rho = norm(z, n);
  const double r2 = inverse_profile(rho);
  const double back = rho > 0.0 ? r2 / rho : 1.0;
  Point y{};
  for (int i = 0; i < n; ++i) y[i] = center_[i] + radius_ * back * z[i];
  if (jac.empty()) return y;

  // D s_v = Dh(u2)^{-1} Dh(u); the chart scaling cancels.
  double fwd[9]{}, inv[9]{};
  const double slope = profile_slope(r), slope2 = profile_slope(r2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double ui = r > 0.0 ? u[i] / r : 0.0, uj = r > 0.0 ? u[j] / r : 0.0;
      const double zi = rho > 0.0 ? z[i] / rho : 0.0, zj = rho > 0.0 ? z[j] / rho : 0.0;
      fwd[i * n + j] = (i == j ? scale : 0.0) + (slope - scale) * ui * uj;
      inv[i * n + j] = (i == j ? back : 0.0) + (1.0 / slope2 - back) * zi * zj;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int m = 0; m < n; ++m) s += inv[i * n + m] * fwd[m * n + j];
      jac[i * n + j] = s;
    }
  return y;
}

Point s_v_apply(const Point& x, const Point& v, const DeRhamDeformation& deformation) {
  for (int i = 0; i < deformation.dim(); ++i)
    require(std::isfinite(v[i]), ErrorCode::invalid_argument, "translation must be finite");
  return deformation.apply(x, v);
}

MollifierSpec MollifierSpec::standard(int n, double epsilon, int nodes_per_axis) {
  require(epsilon > 0.0 && epsilon <= 1.0, ErrorCode::invalid_argument, "mollifier scale must lie in (0, 1]");
  require(nodes_per_axis >= 1, ErrorCode::invalid_argument, "need at least one node per axis");
  const auto& rule = geometry::gauss_legendre(nodes_per_axis);
  MollifierSpec m;
  m.dim = n;
  m.epsilon = epsilon;
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= rule.nodes.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    Point v{};
    double w = 1.0, r2 = 0.0;
    for (int a = 0; a < n; ++a) {
      const std::size_t i = rest % rule.nodes.size();
      rest /= rule.nodes.size();
      v[a] = epsilon * rule.nodes[i];
      w *= rule.weights[i];
      r2 += rule.nodes[i] * rule.nodes[i];
    }
    if (r2 >= 1.0) continue;
    m.nodes.push_back(v);
    m.weights.push_back(w * std::exp(-1.0 / (1.0 - r2)));
  }
  const double sum = std::accumulate(m.weights.begin(), m.weights.end(), 0.0);
  for (double& w : m.weights) w /= sum;
  return m;
}

DifferentialForm regularize(const DifferentialForm& omega, const DeRhamDeformation& deformation,
                            const MollifierSpec& mollifier) {
  const int n = omega.dim();
  require(deformation.dim() == n && mollifier.dim == n, ErrorCode::invalid_argument,
          "form, deformation and mollifier differ in dimension");
  require(mollifier.nodes.size() == mollifier.weights.size() && !mollifier.nodes.empty(),
          ErrorCode::invalid_argument, "mollifier needs one weight per node");
  std::vector<DifferentialForm> pulls;
  for (const auto& v : mollifier.nodes) {
    forms::ChartMap map{n, [deformation, v, n](std::span<const double> x, std::span<double> fx, std::span<double> jac) {
                          Point p{};
                          std::copy(x.begin(), x.end(), p.begin());
                          const Point y = deformation.apply(p, v, jac);
                          std::copy(y.begin(), y.begin() + n, fx.begin());
                        }};
    pulls.push_back(forms::pullback(omega, map));
  }
  const std::vector<double> w = mollifier.weights;
  const Point c = deformation.center();
  const double radius = deformation.radius();
  const int ch = omega.channels();
  auto eval = [omega, pulls, w, c, radius, n, ch](std::span<const double> x, std::span<double> out) {
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) r2 += (x[i] - c[i]) * (x[i] - c[i]);
    if (r2 >= radius * radius) {
      omega.evaluate(x, out);
      return;
    }
    std::fill(out.begin(), out.end(), 0.0);
    std::array<double, 3> buf{};
    for (std::size_t j = 0; j < pulls.size(); ++j) {
      pulls[j].evaluate(x, std::span<double>(buf.data(), ch));
      for (int i = 0; i < ch; ++i) out[i] += w[j] * buf[i];
    }
  };
  return DifferentialForm::analytic(n, omega.degree(), eval, {}, {}, "R(" + omega.label() + ")");
}

double commutation_error(const DifferentialForm& omega, const DeRhamDeformation& deformation,
                         const MollifierSpec& mollifier, const geometry::Grid& grid) {
  const DifferentialForm d_omega =
      omega.exact_differential() ? *omega.exact_differential() : forms::exterior_derivative(omega);
  const DifferentialForm lhs = forms::exterior_derivative(regularize(omega, deformation, mollifier), kink_step);
  const DifferentialForm rhs = regularize(d_omega, deformation, mollifier);
  return forms::max_difference(lhs, rhs, grid);
}

NormProbe operator_norm_probe(const std::vector<DifferentialForm>& samples, double p, double q,
                              const DeRhamDeformation& deformation, const MollifierSpec& mollifier,
                              const geometry::Grid& grid) {
  const auto metric = geometry::DiagonalMetric::euclidean(grid.dim());
  NormProbe probe;
  probe.epsilon = mollifier.epsilon;
  for (const auto& w : samples) {
    const bool top = w.degree() == w.dim();
    std::optional<DifferentialForm> dw;
    if (!top) dw = w.exact_differential() ? *w.exact_differential() : forms::exterior_derivative(w);
    double before = forms::lp_norm(w, metric, grid, q).value;
    double after = forms::lp_norm(regularize(w, deformation, mollifier), metric, grid, q).value;
    if (dw) {
      before += forms::lp_norm(*dw, metric, grid, p).value;
      after += forms::lp_norm(regularize(*dw, deformation, mollifier), metric, grid, p).value;
    }
    require(before > 0.0, ErrorCode::invalid_argument, "norm probe needs nonzero samples");
    probe.ratios.push_back(after / before);
    probe.max_ratio = std::max(probe.max_ratio, after / before);
  }
  return probe;
}

DifferentialForm homotopy_A(const DifferentialForm& omega, const DeRhamDeformation& deformation,
                            const MollifierSpec& mollifier, const homotopy::HomotopyConfig& config) {
  const DifferentialForm t = homotopy::averaged_homotopy(omega, config);
  return forms::linear_combination(1.0, t, -1.0, regularize(t, deformation, mollifier))
      .with_label("A(" + omega.label() + ")");
}

double homotopy_A_residual(const DifferentialForm& omega, const DeRhamDeformation& deformation,
                           const MollifierSpec& mollifier, const homotopy::HomotopyConfig& config,
                           const geometry::Grid& grid) {
  config.validate(grid.domain());
  const int n = omega.dim(), k = omega.degree();
  const DifferentialForm lhs =
      forms::linear_combination(1.0, omega, -1.0, regularize(omega, deformation, mollifier));
  DifferentialForm rhs = forms::exterior_derivative(homotopy_A(omega, deformation, mollifier, config), kink_step);
  if (k < n) {
    const DifferentialForm d_omega =
        omega.exact_differential() ? *omega.exact_differential() : forms::exterior_derivative(omega);
    rhs = forms::linear_combination(1.0, rhs, 1.0, homotopy_A(d_omega, deformation, mollifier, config));
  }
  return forms::max_difference(lhs, rhs, grid);
}

}  // namespace lqp::smoothing

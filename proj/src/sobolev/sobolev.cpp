#include "lqp/sobolev/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lqp/complex/complex.hpp"
#include "lqp/error.hpp"
#include "lqp/forms/autodiff.hpp"
#include "lqp/forms/calculus.hpp"
#include "lqp/forms/multiindex.hpp"
#include "lqp/hodge/hodge.hpp"

namespace lqp::sobolev {

using Eigen::VectorXd;
using geometry::DomainKind;

namespace {

bool periodic_kind(DomainKind kind) { return kind == DomainKind::circle || kind == DomainKind::torus; }

/// All nonzero integer vectors in [-m, m]^n up to sign (first nonzero entry positive).
std::vector<std::array<int, 3>> half_lattice(int n, int m) {
  std::vector<std::array<int, 3>> out;
  const int side = 2 * m + 1;
  int total = 1;
  for (int a = 0; a < n; ++a) total *= side;
  for (int idx = 0; idx < total; ++idx) {
    std::array<int, 3> v{0, 0, 0};
    int rest = idx;
    for (int a = n - 1; a >= 0; --a) {
      v[a] = rest % side - m;
      rest /= side;
    }
    int lead = 0;
    for (int a = 0; a < n && lead == 0; ++a) lead = v[a];
    if (lead > 0) out.push_back(v);
  }
  return out;
}

std::string frequency_label(int n, const std::array<int, 3>& m) {
  static const char* names[] = {"x", "y", "z"};
  std::string s;
  for (int a = 0; a < n; ++a) {
    if (m[a] == 0) continue;
    if (!s.empty()) s += m[a] > 0 ? "+" : "-";
    else if (m[a] < 0) s += "-";
    if (std::abs(m[a]) != 1) s += std::to_string(std::abs(m[a]));
    s += names[a];
  }
  return s;
}

/// inf over closed zeta of ||theta - zeta||_q (entrywise, weight w), starting
/// from the L^2-orthogonal residual r0.
double closed_distance(const hodge::DiscreteHodgeSystem& sys, int k, const VectorXd& r0, double w,
                       double q) {
  const VectorXd weights = VectorXd::Constant(r0.size(), w);
  if (q == 2.0 || r0.norm() == 0.0) return complex::weighted_norm(r0, weights, q);
  require(q > 1.0 && std::isfinite(q), ErrorCode::unsupported,
          "closed-form distance needs 1 < q < inf");
  const double scale = r0.cwiseAbs().maxCoeff();
  auto objective = [&](const VectorXd& r) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < r.size(); ++i) s += std::pow(std::abs(r[i]), q);
    return s;
  };
  // r stays in r0 + ker d; the closed component of the gradient is the admissible direction.
  VectorXd r = r0 / scale;
  double f = objective(r);
  auto closed_part = [&](const VectorXd& r_) {
    VectorXd full(r_.size());
    for (Eigen::Index i = 0; i < r_.size(); ++i)
      full[i] = q * std::pow(std::abs(r_[i]), q - 2.0) * r_[i];
    return VectorXd(full - sys.delta(k + 1, sys.green(k + 1, sys.d(k, full))));
  };
  VectorXd g = closed_part(r);
  double step = 1.0 / std::max(1.0, g.cwiseAbs().maxCoeff());
  for (int it = 0; it < 2000; ++it) {
    const double gg = g.squaredNorm();
    if (gg <= 1e-24 * std::max(1.0, f)) break;
    double t = step;
    VectorXd r_new;
    double f_new = f;
    for (int bt = 0; bt < 60; ++bt) {
      r_new = r - t * g;
      f_new = objective(r_new);
      if (f_new <= f - 1e-4 * t * gg) break;
      t *= 0.5;
    }
    if (!(f_new < f)) break;
    const VectorXd g_new = closed_part(r_new);
    const VectorXd s = r_new - r, y = g_new - g;
    const double sy = s.dot(y);
    step = sy > 0.0 ? s.squaredNorm() / sy : 2.0 * t;
    const double decrease = (f - f_new) / f;
    r = std::move(r_new);
    g = g_new;
    f = f_new;
    if (decrease < 1e-12) break;
  }
  return scale * std::pow(w * f, 1.0 / q);
}

}  // namespace

std::vector<forms::DifferentialForm> trig_family(int n, int k, int max_frequency) {
  require(n >= 1 && n <= 3, ErrorCode::unsupported, "trig family needs n in 1..3");
  require(k >= 0 && k <= n, ErrorCode::degree_mismatch, "degree out of range");
  require(max_frequency >= 1, ErrorCode::invalid_argument, "max_frequency must be positive");
  std::vector<forms::DifferentialForm> out;
  const auto& chans = forms::basis(n, k);
  for (std::size_t c = 0; c < chans.size(); ++c) {
    const std::string dx = k == 0 ? "" : " " + forms::label(chans[c]);
    for (const auto& m : half_lattice(n, max_frequency)) {
      const std::string arg = frequency_label(n, m);
      for (int phase = 0; phase < 2; ++phase) {
        auto fn = [n, m, c, phase](const auto* x, auto* out_c) {
          using S = std::remove_cvref_t<decltype(x[0])>;
          S t = S(0.0);
          for (int a = 0; a < n; ++a) t = t + double(m[a]) * x[a];
          using std::cos, std::sin;
          out_c[c] = phase == 0 ? cos(t) : sin(t);
        };
        out.push_back(forms::make_form(n, k, fn, (phase == 0 ? "cos(" : "sin(") + arg + ")" + dx));
      }
    }
  }
  return out;
}

SobolevEstimate estimate_constant(std::shared_ptr<const geometry::Grid> grid, int k, double p,
                                  double q, const FamilySpec& family) {
  require(grid != nullptr, ErrorCode::invalid_argument, "estimate_constant needs a grid");
  const auto& domain = grid->domain();
  const int n = domain.dim();
  require(periodic_kind(domain.kind()), ErrorCode::unsupported,
          "constant estimates are implemented on the circle and torus only");
  require(k >= 0 && k < n, ErrorCode::degree_mismatch, "degree must satisfy 0 <= k < n");
  const auto check = geometry::sobolev_exponent_check(geometry::ExponentPair(p, q), n);
  require(check.verdict != geometry::SobolevVerdict::violated, ErrorCode::inadmissible_exponents,
          "exponents violate 1/p - 1/q <= 1/n (" + check.branch +
              "): no uniform constant exists; see the ball-witness experiment");

  hodge::DiscreteHodgeSystem sys(grid);
  const double w = sys.lattice().cell_volume();
  SobolevEstimate est;
  est.domain = domain.describe();
  est.degree = k;
  est.p = p;
  est.q = q;
  est.resolution = static_cast<int>(grid->axes()[0].nodes.size());
  est.exponents = check.verdict;

  auto members = trig_family(n, k, family.max_frequency);
  members.insert(members.end(), family.extra.begin(), family.extra.end());
  for (const auto& theta : members) {
    require(theta.dim() == n && theta.degree() == k, ErrorCode::degree_mismatch,
            "family member has the wrong dimension or degree");
    const VectorXd t = sys.lattice().sample(theta);
    const VectorXd dt = sys.d(k, t);
    const double denom = complex::weighted_norm(dt, VectorXd::Constant(dt.size(), w), p);
    if (!(denom > 1e-12 * std::max(1.0, t.norm()))) continue;
    const VectorXd coexact = sys.delta(k + 1, sys.green(k + 1, dt));
    const double num = closed_distance(sys, k, coexact, w, q);
    const double ratio = num / denom;
    est.members.push_back({theta.label(), ratio});
    if (ratio > est.lower_bound) {
      est.lower_bound = ratio;
      est.best_member = theta.label();
    }
  }
  require(!est.members.empty(), ErrorCode::invalid_argument, "family has no member with d theta != 0");
  if (p == 2.0 && q == 2.0) {
    est.exact = 1.0 / std::sqrt(sys.spectral_gap());
    est.solvability_constant = *est.exact;
    est.solvability_method = "spectral";
  } else {
    est.solvability_constant = est.lower_bound;
    est.solvability_method = "family";
  }
  return est;
}

std::vector<SobolevEstimate> estimate_ladder(const geometry::ChartDomain& domain, int k, double p,
                                             double q, const std::vector<int>& resolutions,
                                             const FamilySpec& family) {
  std::vector<SobolevEstimate> out;
  for (int r : resolutions) {
    geometry::GridOptions opts;
    opts.resolution.assign(domain.dim(), r);
    auto grid = std::make_shared<const geometry::Grid>(geometry::build_grid(domain, opts));
    out.push_back(estimate_constant(grid, k, p, q, family));
  }
  return out;
}

SolvabilityReport verify_solvability(const forms::DifferentialForm& omega,
                                     std::shared_ptr<const geometry::Grid> grid, double p, double q,
                                     std::optional<homotopy::HomotopyConfig> config) {
  require(grid != nullptr, ErrorCode::invalid_argument, "verify_solvability needs a grid");
  const auto& domain = grid->domain();
  const int n = domain.dim();
  const int k = omega.degree();
  require(omega.dim() == n, ErrorCode::degree_mismatch, "form and grid dimensions differ");
  require(k >= 1, ErrorCode::degree_mismatch, "a primitive needs degree k >= 1");
  SolvabilityReport rep;

  if (domain.kind() == DomainKind::ball) {
    rep.method = "homotopy";
    const auto cfg = config ? *config : homotopy::HomotopyConfig::point(n, {0.0, 0.0, 0.0});
    auto prim = homotopy::poincare_primitive(omega, p, q, cfg, *grid);
    rep.solvable = true;
    rep.norm_primitive = prim.norm_primitive;
    rep.norm_form = prim.norm_form;
    rep.ratio = prim.ratio;
    rep.residual = prim.residual;
    rep.bound = prim.bound.kernel_norm;
    rep.primitive = prim.primitive;
    return rep;
  }
  require(periodic_kind(domain.kind()), ErrorCode::unsupported,
          "solvability is implemented on the ball, circle and torus");
  rep.method = "hodge";
  hodge::DiscreteHodgeSystem sys(grid);
  const double w = sys.lattice().cell_volume();
  const VectorXd a = sys.lattice().sample(omega);
  const double scale = std::max(sys.norm(a), 1e-300);
  if (k < n) {
    const double closed = sys.norm(sys.d(k, a)) / scale;
    require(closed <= 1e-8, ErrorCode::invalid_argument, "form is not closed");
  }
  // Pair against the constant harmonic forms dx^I.
  const auto& chans = forms::basis(n, k);
  const std::size_t nodes = sys.lattice().nodes();
  double vol = 1.0;
  for (double len : domain.lengths()) vol *= len;
  for (std::size_t c = 0; c < chans.size(); ++c) {
    const double value = w * a.segment(static_cast<Eigen::Index>(c * nodes), nodes).sum();
    const std::string name = "<omega, " + forms::label(chans[c]) + ">";
    if (std::abs(value) > 1e-8 * scale * std::sqrt(vol)) rep.obstructions.push_back({name, value});
  }
  const VectorXd ones = VectorXd::Constant(a.size(), w);
  rep.norm_form = complex::weighted_norm(a, ones, p);
  if (!rep.obstructions.empty()) return rep;
  rep.solvable = true;
  const VectorXd eta = sys.delta(k, sys.green(k, a));
  rep.residual = sys.norm(sys.d(k - 1, eta) - a) / scale;
  rep.norm_primitive = complex::weighted_norm(eta, VectorXd::Constant(eta.size(), w), q);
  rep.ratio = rep.norm_form > 0.0 ? rep.norm_primitive / rep.norm_form : 0.0;
  rep.primitive = sys.lattice().to_form(eta, k - 1);
  return rep;
}

bool MonotonicityReport::all_hold() const {
  return std::all_of(samples.begin(), samples.end(), [](const auto& s) { return s.holds; });
}

MonotonicityReport monotonicity_check(const geometry::Grid& grid,
                                      const geometry::DiagonalMetric& metric,
                                      const std::vector<forms::DifferentialForm>& samples,
                                      double q1, double q2) {
  require(grid.domain().kind() != DomainKind::halfplane, ErrorCode::domain_error,
          "the hyperbolic plane has infinite volume");
  require(q1 >= 1.0 && q1 <= q2, ErrorCode::invalid_argument, "need 1 <= q1 <= q2");
  MonotonicityReport rep;
  rep.q1 = q1;
  rep.q2 = q2;
  rep.volume = geometry::volume(grid.domain(), metric, grid);
  rep.factor = std::pow(rep.volume, 1.0 / q1 - (std::isinf(q2) ? 0.0 : 1.0 / q2));
  for (const auto& theta : samples) {
    MonotonicitySample s;
    s.label = theta.label();
    s.norm_q1 = forms::lp_norm(theta, metric, grid, q1).value;
    s.norm_q2 = forms::lp_norm(theta, metric, grid, q2).value;
    const double bound = rep.factor * s.norm_q2;
    s.slack = bound - s.norm_q1;
    const double tol = 1e-8 * std::max(bound, 1e-300);
    s.holds = s.slack >= -tol;
    s.equality = std::abs(s.slack) <= tol;
    rep.samples.push_back(s);
  }
  return rep;
}

std::vector<forms::DifferentialForm> random_trig_forms(int n, int k, int count, unsigned seed) {
  require(count >= 0, ErrorCode::invalid_argument, "count must be nonnegative");
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  const int channels = forms::binomial(n, k);
  const auto freqs = half_lattice(n, 2);
  std::vector<forms::DifferentialForm> out;
  for (int s = 0; s < count; ++s) {
    // coefficient c, frequency f, phase: a[c][f][0] cos + a[c][f][1] sin
    std::vector<double> coef(static_cast<std::size_t>(channels) * (freqs.size() + 1) * 2);
    for (double& v : coef) v = normal(rng);
    auto fn = [n, channels, freqs, coef](const auto* x, auto* out_c) {
      using S = std::remove_cvref_t<decltype(x[0])>;
      using std::cos, std::sin;
      const std::size_t stride = (freqs.size() + 1) * 2;
      for (int c = 0; c < channels; ++c) {
        S acc = S(coef[c * stride]);
        for (std::size_t f = 0; f < freqs.size(); ++f) {
          S t = S(0.0);
          for (int a = 0; a < n; ++a) t = t + double(freqs[f][a]) * x[a];
          acc = acc + coef[c * stride + 2 * (f + 1)] * cos(t) + coef[c * stride + 2 * (f + 1) + 1] * sin(t);
        }
        out_c[c] = acc;
      }
    };
    out.push_back(forms::make_form(n, k, fn, "random_trig_" + std::to_string(s)));
  }
  return out;
}

}  // namespace lqp::sobolev

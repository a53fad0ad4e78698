#include "lqp/complex/complex.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <istream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "lqp/complex/lattice.hpp"
#include "lqp/error.hpp"
#include "lqp/forms/multiindex.hpp"

namespace lqp::complex {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double weighted_norm(const VectorXd& x, const VectorXd& weights, double r) {
  require(x.size() == weights.size(), ErrorCode::invalid_argument, "weight vector length mismatch");
  if (std::isinf(r)) return x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += weights[i] * std::pow(std::abs(x[i]), r);
  return std::pow(s, 1.0 / r);
}

FiniteCochainComplex::FiniteCochainComplex(std::vector<MatrixXd> differentials, std::vector<LevelNorm> norms)
    : d_(std::move(differentials)), norms_(std::move(norms)) {
  require(!norms_.empty() && d_.size() + 1 == norms_.size(), ErrorCode::invalid_argument,
          "a complex with L levels needs L-1 differentials");
  for (std::size_t k = 0; k < norms_.size(); ++k) {
    const auto& w = norms_[k].weights;
    require((w.array() > 0.0).all(), ErrorCode::invalid_argument, "level weights must be positive");
    require(norms_[k].exponent >= 1.0, ErrorCode::invalid_argument, "level exponent must be >= 1");
  }
  for (std::size_t k = 0; k < d_.size(); ++k)
    require(d_[k].cols() == norms_[k].weights.size() && d_[k].rows() == norms_[k + 1].weights.size(),
            ErrorCode::invalid_argument, "differential shape does not match level dimensions");
  for (std::size_t k = 0; k + 1 < d_.size(); ++k) {
    const MatrixXd dd = d_[k + 1] * d_[k];
    const double scale = std::max(1.0, d_[k + 1].cwiseAbs().maxCoeff() * d_[k].cwiseAbs().maxCoeff());
    require(dd.size() == 0 || dd.cwiseAbs().maxCoeff() <= 1e-12 * scale, ErrorCode::invalid_argument,
            "D_{k+1} D_k is not zero");
  }
  d_.push_back(MatrixXd::Zero(0, norms_.back().weights.size()));
}

FiniteCochainComplex FiniteCochainComplex::unweighted(std::vector<MatrixXd> differentials) {
  require(!differentials.empty(), ErrorCode::invalid_argument, "need at least one differential");
  std::vector<LevelNorm> norms;
  norms.push_back({VectorXd::Ones(differentials.front().cols()), 2.0});
  for (const auto& d : differentials) norms.push_back({VectorXd::Ones(d.rows()), 2.0});
  return FiniteCochainComplex(std::move(differentials), std::move(norms));
}

int FiniteCochainComplex::dim(int k) const {
  require(k >= 0 && k < levels(), ErrorCode::invalid_argument, "level out of range");
  return static_cast<int>(norms_[k].weights.size());
}

const MatrixXd& FiniteCochainComplex::d(int k) const {
  require(k >= 0 && k < levels(), ErrorCode::invalid_argument, "level out of range");
  return d_[k];
}

const LevelNorm& FiniteCochainComplex::norm(int k) const {
  require(k >= 0 && k < levels(), ErrorCode::invalid_argument, "level out of range");
  return norms_[k];
}

int numerical_rank(const MatrixXd& m, double reference) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double scale = std::max(s.size() ? s[0] : 0.0, reference);
  if (scale == 0.0) return 0;
  return static_cast<int>((s.array() > 1e-10 * scale).count());
}

double spectral_scale(const FiniteCochainComplex& c) {
  double scale = 0.0;
  for (int k = 0; k + 1 < c.levels(); ++k)
    if (c.d(k).size() > 0) {
      Eigen::BDCSVD<MatrixXd> svd(c.d(k));
      scale = std::max(scale, svd.singularValues()[0]);
    }
  return scale;
}

int cohomology_dimension(const FiniteCochainComplex& c, int k) {
  const double scale = spectral_scale(c);
  const int kernel = c.dim(k) - numerical_rank(c.d(k), scale);
  const int image = k > 0 ? numerical_rank(c.d(k - 1), scale) : 0;
  return kernel - image;
}

TorsionReport torsion_check(const FiniteCochainComplex& c, int k) {
  TorsionReport r;
  r.level = k;
  r.cohomology_dimension = cohomology_dimension(c, k);
  if (k > 0 && c.d(k - 1).size() > 0) {
    Eigen::BDCSVD<MatrixXd> svd(c.d(k - 1));
    const auto& s = svd.singularValues();
    const double scale = spectral_scale(c);
    if (scale > 0.0)
      for (Eigen::Index i = s.size() - 1; i >= 0; --i)
        if (s[i] > 1e-10 * scale) {
          r.closedness_margin = s[i];
          break;
        }
  }
  return r;
}

const char* to_string(ConstantMethod m) noexcept {
  switch (m) {
    case ConstantMethod::svd: return "svd";
    case ConstantMethod::convex_opt: return "convex-opt";
    case ConstantMethod::brute_force: return "brute-force";
  }
  return "unknown";
}

Distance distance_to_span(const VectorXd& x, const MatrixXd& span, const VectorXd& w, double q) {
  require(q > 1.0 && std::isfinite(q), ErrorCode::unsupported,
          "distance minimization needs 1 < q < inf");
  Distance out;
  const double scale = x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0 || span.cols() == 0) {
    out.residual = x;
    out.value = weighted_norm(x, w, q);
    return out;
  }
  const VectorXd xs = x / scale;
  const MatrixXd kw = span.transpose() * w.asDiagonal();
  VectorXd z = (kw * span).ldlt().solve(kw * xs);
  auto objective = [&](const VectorXd& zz) {
    const VectorXd r = xs - span * zz;
    double f = 0.0;
    for (Eigen::Index i = 0; i < r.size(); ++i) f += w[i] * std::pow(std::abs(r[i]), q);
    return f;
  };
  double f = objective(z);
  if (q != 2.0) {
    for (int it = 0; it < 200; ++it) {
      out.iterations = it + 1;
      const VectorXd r = xs - span * z;
      const double rmax = r.cwiseAbs().maxCoeff();
      if (rmax == 0.0) break;
      VectorXd g(r.size()), h(r.size());
      for (Eigen::Index i = 0; i < r.size(); ++i) {
        const double a = std::abs(r[i]);
        g[i] = w[i] * q * std::pow(a, q - 1.0) * (r[i] >= 0 ? 1.0 : -1.0);
        h[i] = w[i] * q * (q - 1.0) * std::pow(std::max(a, 1e-8 * rmax), q - 2.0);
      }
      const VectorXd descent_rhs = span.transpose() * g;  // = -grad f
      MatrixXd hess = span.transpose() * h.asDiagonal() * span;
      hess.diagonal().array() += 1e-14 * hess.diagonal().cwiseAbs().maxCoeff();
      const VectorXd step = hess.ldlt().solve(descent_rhs);
      const double slope = -descent_rhs.dot(step);
      if (!(slope < 0.0)) break;
      double t = 1.0, f_new = objective(z + step);
      while (f_new > f + 1e-4 * t * slope && t > 1e-20) {
        t *= 0.5;
        f_new = objective(z + t * step);
      }
      if (f_new > f) break;
      z += t * step;
      const double decrease = f - f_new;
      f = f_new;
      if (decrease <= 1e-16 * f || t * step.norm() <= 1e-15 * (1.0 + z.norm())) break;
    }
  }
  out.residual = scale * (xs - span * z);
  out.value = scale * std::pow(f, 1.0 / q);
  return out;
}

namespace {

struct Problem {
  MatrixXd d;         // D_{k-1}
  VectorXd w_src;     // level k-1 weights (exponent q)
  VectorXd w_dst;     // level k weights (exponent p)
  double p, q;
  MatrixXd row_space; // orthonormal basis of (ker D)^perp
  MatrixXd kernel;    // orthonormal basis of ker D

  double ratio(const VectorXd& xi, Distance* dist = nullptr) const {
    const double denom = weighted_norm(d * xi, w_dst, p);
    Distance dd = distance_to_span(xi, kernel, w_src, q);
    if (dist) *dist = dd;
    return denom > 0.0 ? dd.value / denom : 0.0;
  }

  /// F and its gradient with respect to y, where xi = row_space * y.
  double value_and_gradient(const VectorXd& y, VectorXd& grad) const {
    const VectorXd xi = row_space * y;
    Distance dist;
    const double f = ratio(xi, &dist);
    const VectorXd u = d * xi;
    const double psi = weighted_norm(u, w_dst, p);
    const double phi = dist.value;
    VectorXd gphi(xi.size()), gpsi_u(u.size());
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
      const double a = dist.residual[i];
      gphi[i] = w_src[i] * std::pow(std::abs(a), q - 1.0) * (a >= 0 ? 1.0 : -1.0);
    }
    gphi /= std::pow(phi, q - 1.0);
    for (Eigen::Index i = 0; i < u.size(); ++i)
      gpsi_u[i] = w_dst[i] * std::pow(std::abs(u[i]), p - 1.0) * (u[i] >= 0 ? 1.0 : -1.0);
    gpsi_u /= std::pow(psi, p - 1.0);
    const VectorXd gxi = (gphi - f * (d.transpose() * gpsi_u)) / psi;
    grad = row_space.transpose() * gxi;
    grad -= grad.dot(y) / y.squaredNorm() * y;
    return f;
  }
};

Problem make_problem(const FiniteCochainComplex& c, int k, double p, double q) {
  require(k >= 1 && k < c.levels(), ErrorCode::invalid_argument, "constant needs 1 <= k < levels");
  require(p >= 1.0 && q >= 1.0, ErrorCode::invalid_argument, "exponents must be >= 1");
  Problem pr{c.d(k - 1), c.norm(k - 1).weights, c.norm(k).weights, p, q, {}, {}};
  const int m = static_cast<int>(pr.d.cols());
  if (m == 0) return pr;
  Eigen::JacobiSVD<MatrixXd> svd(pr.d, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double scale = spectral_scale(c);
  int rank = 0;
  if (scale > 0.0) rank = static_cast<int>((s.array() > 1e-10 * scale).count());
  pr.row_space = svd.matrixV().leftCols(rank);
  pr.kernel = svd.matrixV().rightCols(m - rank);
  return pr;
}

ConstantReport base_report(const FiniteCochainComplex& c, int k, double p, double q, const Problem& pr) {
  ConstantReport r;
  r.level = k;
  r.p = p;
  r.q = q;
  r.reachable = pr.row_space.cols() > 0;
  if (!r.reachable) r.certificate = VectorXd::Zero(pr.d.cols());
  (void)c;
  return r;
}

void finish(const FiniteCochainComplex& c, int k, ConstantReport& r) {
  r.closed_value = cohomology_dimension(c, k) == 0 ? r.value : std::numeric_limits<double>::infinity();
}

ConstantReport svd_constant(const FiniteCochainComplex& c, int k, double p, double q, const Problem& pr) {
  require(p == 2.0 && q == 2.0, ErrorCode::invalid_argument, "svd constant needs p = q = 2");
  ConstantReport r = base_report(c, k, p, q, pr);
  r.method = ConstantMethod::svd;
  if (!r.reachable) return r;
  const VectorXd src_sqrt = pr.w_src.cwiseSqrt();
  const MatrixXd a = pr.w_dst.cwiseSqrt().asDiagonal() * pr.d * src_sqrt.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index last = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > 1e-10 * s[0]) last = i;
  r.value = 1.0 / s[last];
  r.certificate = src_sqrt.cwiseInverse().asDiagonal() * svd.matrixV().col(last);
  return r;
}

// Projected ascent on the unit sphere; y is replaced by the maximizer.
double ascend(const Problem& pr, VectorXd& y) {
  y.normalize();
  VectorXd g;
  double f = pr.value_and_gradient(y, g);
  double t = 0.5 / std::max(g.norm(), 1e-300);
  for (int it = 0; it < 5000; ++it) {
    const double gn = g.norm();
    if (gn <= 1e-12 * std::max(f, 1e-300)) break;
    bool accepted = false;
    while (t * gn > 1e-14) {
      VectorXd trial = (y + t * g).normalized();
      VectorXd gt;
      const double ft = pr.value_and_gradient(trial, gt);
      if (ft > f) {
        const double gain = ft - f;
        y = trial;
        g = gt;
        f = ft;
        t *= 2.0;
        accepted = gain > 1e-15 * f;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
  }
  return f;
}

}  // namespace

double corrector_ratio(const FiniteCochainComplex& c, int k, double p, double q, const VectorXd& xi) {
  Problem pr = make_problem(c, k, p, q);
  require(xi.size() == pr.d.cols(), ErrorCode::invalid_argument, "certificate has the wrong length");
  return pr.ratio(xi);
}

namespace {

ConstantReport optimize_constant(const FiniteCochainComplex& c, int k, double p, double q,
                                 const ConstantOptions& options) {
  Problem pr = make_problem(c, k, p, q);
  ConstantMethod method = options.method.value_or(p == 2.0 && q == 2.0 ? ConstantMethod::svd
                                                                       : ConstantMethod::convex_opt);
  if (method == ConstantMethod::brute_force) return brute_force_constant(c, k, p, q, options);
  ConstantReport r;
  if (method == ConstantMethod::svd) {
    r = svd_constant(c, k, p, q, pr);
    finish(c, k, r);
    return r;
  }
  r = base_report(c, k, p, q, pr);
  r.method = ConstantMethod::convex_opt;
  if (!r.reachable) {
    finish(c, k, r);
    return r;
  }
  const int dim = static_cast<int>(pr.row_space.cols());
  std::vector<VectorXd> starts;
  // warm starts from the weighted l^2 problem
  {
    const VectorXd src_sqrt = pr.w_src.cwiseSqrt();
    const MatrixXd a = pr.w_dst.cwiseSqrt().asDiagonal() * pr.d * src_sqrt.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullV);
    for (int i = 0; i < dim; ++i)
      starts.push_back(pr.row_space.transpose() * (src_sqrt.cwiseInverse().asDiagonal() * svd.matrixV().col(i)));
  }
  std::mt19937 rng(options.seed);
  std::normal_distribution<double> normal;
  for (int i = 0; i < options.restarts; ++i) {
    VectorXd y(dim);
    for (auto& v : y) v = normal(rng);
    starts.push_back(y);
  }
  double best = -1.0;
  VectorXd y;
  for (auto& y0 : starts) {
    if (y0.norm() == 0.0) continue;
    const double f = ascend(pr, y0);
    if (f > best) {
      best = f;
      y = y0;
    }
  }
  r.certificate = pr.row_space * y;
  r.value = pr.ratio(r.certificate);
  finish(c, k, r);
  return r;
}

}  // namespace

ConstantReport solvability_constant(const FiniteCochainComplex& c, int k, double p, double q,
                                    const ConstantOptions& options) {
  return optimize_constant(c, k, p, q, options);
}

ConstantReport corrector_constant(const FiniteCochainComplex& c, int k, double p, double q,
                                  const ConstantOptions& options) {
  return optimize_constant(c, k, p, q, options);
}

ConstantReport brute_force_constant(const FiniteCochainComplex& c, int k, double p, double q,
                                    const ConstantOptions& options) {
  Problem pr = make_problem(c, k, p, q);
  ConstantReport r = base_report(c, k, p, q, pr);
  r.method = ConstantMethod::brute_force;
  if (!r.reachable) {
    finish(c, k, r);
    return r;
  }
  const int dim = static_cast<int>(pr.row_space.cols());
  auto f = [&](const VectorXd& y) {
    const double n = y.norm();
    return n > 0.0 ? pr.ratio(pr.row_space * (y / n)) : 0.0;
  };
  std::mt19937 rng(options.seed + 1);
  std::normal_distribution<double> normal;
  const int samples = dim == 1 ? 1 : options.samples_per_dim * dim;
  std::vector<std::pair<double, VectorXd>> top;
  for (int s = 0; s < samples; ++s) {
    VectorXd y(dim);
    for (auto& v : y) v = normal(rng);
    y.normalize();
    const double v = f(y);
    top.emplace_back(v, y);
    if (top.size() > 3) {
      std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      top.pop_back();
    }
  }
  double best = -1.0;
  VectorXd best_y;
  for (auto& [v0, y0] : top) {
    // Nelder-Mead in R^dim; f is scale invariant
    std::vector<VectorXd> simplex{y0};
    for (int i = 0; i < dim; ++i) {
      VectorXd e = y0;
      e[i] += 0.05;
      simplex.push_back(e);
    }
    std::vector<double> fv;
    for (auto& s : simplex) fv.push_back(-f(s));
    for (int it = 0; it < 4000 * dim; ++it) {
      std::vector<int> idx(simplex.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
      std::vector<VectorXd> s2;
      std::vector<double> f2;
      for (int i : idx) s2.push_back(simplex[i]), f2.push_back(fv[i]);
      simplex = s2;
      fv = f2;
      if (std::abs(fv.back() - fv.front()) <= 1e-15 * std::abs(fv.front())) break;
      VectorXd centroid = VectorXd::Zero(dim);
      for (int i = 0; i < dim; ++i) centroid += simplex[i];
      centroid /= dim;
      const VectorXd worst = simplex.back();
      const VectorXd xr = centroid + (centroid - worst);
      const double fr = -f(xr);
      if (fr < fv.front()) {
        const VectorXd xe = centroid + 2.0 * (centroid - worst);
        const double fe = -f(xe);
        if (fe < fr) simplex.back() = xe, fv.back() = fe;
        else simplex.back() = xr, fv.back() = fr;
      } else if (fr < fv[dim - 1]) {
        simplex.back() = xr, fv.back() = fr;
      } else {
        const VectorXd xc = centroid + 0.5 * (worst - centroid);
        const double fc = -f(xc);
        if (fc < fv.back()) {
          simplex.back() = xc, fv.back() = fc;
        } else {
          for (int i = 1; i <= dim; ++i) {
            simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
            fv[i] = -f(simplex[i]);
          }
        }
      }
    }
    const int bi = static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    if (-fv[bi] > best) {
      best = -fv[bi];
      best_y = simplex[bi].normalized();
    }
  }
  r.certificate = pr.row_space * best_y;
  r.value = pr.ratio(r.certificate);
  finish(c, k, r);
  return r;
}

FiniteCochainComplex discretize(const geometry::ChartDomain& domain, const geometry::DiagonalMetric& metric,
                                const geometry::Grid& grid, int max_degree) {
  require(domain.compact(), ErrorCode::domain_error, "discretize needs a compact domain");
  require(metric.dim() == domain.dim() && grid.dim() == domain.dim(), ErrorCode::invalid_argument,
          "domain, metric and grid dimensions differ");
  const int n = domain.dim();
  require(max_degree >= 1 && max_degree <= n, ErrorCode::invalid_argument, "max degree out of range");
  std::array<double, 3> g0{1, 1, 1}, g{1, 1, 1};
  metric.coefficients(grid.point(0), std::span<double>(g0.data(), n));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    metric.coefficients(grid.point(i), std::span<double>(g.data(), n));
    for (int a = 0; a < n; ++a)
      require(std::abs(g[a] - g0[a]) <= 1e-12 * std::abs(g0[a]), ErrorCode::unsupported,
              "discretize needs a constant metric");
  }
  StaggeredLattice lattice(std::make_shared<const geometry::Grid>(grid));
  double det = 1.0;
  for (int a = 0; a < n; ++a) det *= g0[a];
  std::vector<LevelNorm> norms;
  std::vector<MatrixXd> d;
  for (int k = 0; k <= max_degree; ++k) {
    const auto& b = forms::basis(n, k);
    VectorXd w(lattice.size(k));
    for (std::size_t c = 0; c < b.size(); ++c) {
      double f = lattice.cell_volume() * std::sqrt(det);
      for (int a = 0; a < n; ++a)
        if (b[c] & (forms::Mask{1} << a)) f /= g0[a];
      w.segment(c * lattice.nodes(), lattice.nodes()).setConstant(f);
    }
    norms.push_back({w, 2.0});
    if (k < max_degree) d.push_back(MatrixXd(lattice.d(k)));
  }
  return FiniteCochainComplex(std::move(d), std::move(norms));
}

void write_text(std::ostream& out, const FiniteCochainComplex& c) {
  out << std::setprecision(17);
  out << "lqp-complex 1\n";
  out << "levels " << c.levels() << '\n';
  out << "dims";
  for (int k = 0; k < c.levels(); ++k) out << ' ' << c.dim(k);
  out << "\nexponents";
  for (int k = 0; k < c.levels(); ++k) {
    const double e = c.norm(k).exponent;
    if (std::isinf(e)) out << " inf";
    else out << ' ' << e;
  }
  out << '\n';
  for (int k = 0; k < c.levels(); ++k) {
    out << "weights " << k;
    for (double w : c.norm(k).weights) out << ' ' << w;
    out << '\n';
  }
  for (int k = 0; k + 1 < c.levels(); ++k) {
    const MatrixXd& m = c.d(k);
    out << "matrix " << k << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
      out << '\n';
    }
  }
}

namespace {

void expect(std::istream& in, const std::string& word) {
  std::string w;
  in >> w;
  require(w == word, ErrorCode::io_error, "expected '" + word + "', found '" + w + "'");
}

double read_number(std::istream& in) {
  std::string s;
  in >> s;
  require(!s.empty(), ErrorCode::io_error, "unexpected end of complex stream");
  if (s == "inf") return std::numeric_limits<double>::infinity();
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    fail(ErrorCode::io_error, "bad number '" + s + "'");
  }
}

}  // namespace

FiniteCochainComplex read_text(std::istream& in) {
  expect(in, "lqp-complex");
  require(read_number(in) == 1.0, ErrorCode::io_error, "unsupported complex format version");
  expect(in, "levels");
  const int levels = static_cast<int>(read_number(in));
  require(levels >= 1 && levels <= 64, ErrorCode::io_error, "bad level count");
  expect(in, "dims");
  std::vector<int> dims(levels);
  for (auto& m : dims) {
    m = static_cast<int>(read_number(in));
    require(m >= 0, ErrorCode::io_error, "negative dimension");
  }
  expect(in, "exponents");
  std::vector<LevelNorm> norms(levels);
  for (auto& n : norms) n.exponent = read_number(in);
  for (int k = 0; k < levels; ++k) {
    expect(in, "weights");
    require(read_number(in) == k, ErrorCode::io_error, "weights out of order");
    norms[k].weights.resize(dims[k]);
    for (auto& w : norms[k].weights) w = read_number(in);
  }
  std::vector<MatrixXd> d;
  for (int k = 0; k + 1 < levels; ++k) {
    expect(in, "matrix");
    require(read_number(in) == k, ErrorCode::io_error, "matrices out of order");
    const int rows = static_cast<int>(read_number(in)), cols = static_cast<int>(read_number(in));
    require(rows == dims[k + 1] && cols == dims[k], ErrorCode::io_error, "matrix shape mismatch");
    MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = read_number(in);
    d.push_back(std::move(m));
  }
  return FiniteCochainComplex(std::move(d), std::move(norms));
}

}  // namespace lqp::complex

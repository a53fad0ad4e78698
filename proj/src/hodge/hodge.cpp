#include "lqp/hodge/hodge.hpp"

#include <fftw3.h>

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include "lqp/error.hpp"
#include "lqp/forms/multiindex.hpp"

namespace lqp::hodge {

using Eigen::MatrixXd;
using Cplx = std::complex<double>;

namespace {

// Symbol of the staggered difference at angle theta, times h.
Cplx stagger_symbol(double theta) {
  const Cplx e = std::polar(1.0, theta);
  return (1.0 / e - 27.0 + 27.0 * e - e * e) / 24.0;
}

// Multi-dimensional complex DFT over a row-major lattice.
class Transform {
 public:
  explicit Transform(const std::vector<std::size_t>& shape) {
    std::vector<int> dims(shape.begin(), shape.end());
    size_ = 1;
    for (auto s : shape) size_ *= s;
    buf_ = fftw_alloc_complex(size_);
    forward_ = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Transform() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buf_);
  }
  Transform(const Transform&) = delete;
  Transform& operator=(const Transform&) = delete;

  Cplx* data() { return reinterpret_cast<Cplx*>(buf_); }
  void forward() { fftw_execute(forward_); }
  void backward() { fftw_execute(backward_); }
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
  fftw_complex* buf_;
  fftw_plan forward_, backward_;
};

}  // namespace

DiscreteHodgeSystem::DiscreteHodgeSystem(std::shared_ptr<const geometry::Grid> grid) : lattice_(std::move(grid)) {
  const int n = lattice_.dim();
  for (int k = 0; k < n; ++k) d_.push_back(lattice_.d(k));

  const auto& shape = lattice_.shape();
  const std::size_t nodes = lattice_.nodes();
  spectrum_.assign(nodes, 0.0);
  for (std::size_t i = 0; i < nodes; ++i) {
    std::size_t rest = i;
    double lambda = 0.0;
    for (int a = n - 1; a >= 0; --a) {
      const std::size_t m = rest % shape[a];
      rest /= shape[a];
      const double theta = 2.0 * std::numbers::pi * double(m) / double(shape[a]);
      lambda += std::norm(stagger_symbol(theta)) / (lattice_.spacing(a) * lattice_.spacing(a));
    }
    spectrum_[i] = lambda;
  }
  const double top = *std::max_element(spectrum_.begin(), spectrum_.end());
  zero_tol_ = 1e-10 * top;
  gap_ = top;
  std::vector<std::size_t> zero_modes;
  for (std::size_t i = 0; i < nodes; ++i) {
    if (spectrum_[i] <= zero_tol_) zero_modes.push_back(i);
    else gap_ = std::min(gap_, spectrum_[i]);
  }

  // Real basis of each channel's null space from the zero modes.
  std::vector<VectorXd> scalar;
  for (std::size_t idx : zero_modes) {
    VectorXd c(nodes), s(nodes);
    for (std::size_t j = 0; j < nodes; ++j) {
      std::size_t rj = j, rm = idx;
      double phase = 0.0;
      for (int a = n - 1; a >= 0; --a) {
        phase += 2.0 * std::numbers::pi * double(rm % shape[a]) * double(rj % shape[a]) / double(shape[a]);
        rj /= shape[a];
        rm /= shape[a];
      }
      c[j] = std::cos(phase);
      s[j] = std::sin(phase);
    }
    for (const VectorXd* v : {&c, &s}) {
      VectorXd w = *v;
      for (const auto& b : scalar) w -= b.dot(w) * b;
      if (w.norm() > 1e-8 * std::sqrt(double(nodes))) scalar.push_back(w.normalized());
    }
  }
  const double inv_root_cell = 1.0 / std::sqrt(lattice_.cell_volume());
  for (int k = 0; k <= n; ++k) {
    const int ch = forms::binomial(n, k);
    MatrixXd basis = MatrixXd::Zero(lattice_.size(k), ch * scalar.size());
    for (int c = 0; c < ch; ++c)
      for (std::size_t m = 0; m < scalar.size(); ++m)
        basis.col(c * scalar.size() + m).segment(c * nodes, nodes) = scalar[m] * inv_root_cell;
    harmonic_.push_back(std::move(basis));
  }
}

double DiscreteHodgeSystem::inner(const VectorXd& a, const VectorXd& b) const {
  require(a.size() == b.size(), ErrorCode::invalid_argument, "cochains of different length");
  return lattice_.cell_volume() * a.dot(b);
}

double DiscreteHodgeSystem::norm(const VectorXd& a) const { return std::sqrt(inner(a, a)); }

VectorXd DiscreteHodgeSystem::d(int k, const VectorXd& a) const {
  require(static_cast<std::size_t>(a.size()) == size(k), ErrorCode::degree_mismatch, "cochain length does not match degree");
  if (k == dim()) return VectorXd();
  return d_[k] * a;
}

VectorXd DiscreteHodgeSystem::delta(int k, const VectorXd& a) const {
  require(static_cast<std::size_t>(a.size()) == size(k), ErrorCode::degree_mismatch, "cochain length does not match degree");
  if (k == 0) return VectorXd();
  return d_[k - 1].transpose() * a;
}

VectorXd DiscreteHodgeSystem::laplacian(int k, const VectorXd& a) const {
  VectorXd out = VectorXd::Zero(a.size());
  if (k > 0) out += d(k - 1, delta(k, a));
  if (k < dim()) out += delta(k + 1, d(k, a));
  return out;
}

Eigen::SparseMatrix<double> DiscreteHodgeSystem::delta_matrix(int k) const {
  require(k >= 1 && k <= dim(), ErrorCode::degree_mismatch, "codifferential needs 1 <= k <= n");
  return d_[k - 1].transpose();
}

Eigen::SparseMatrix<double> DiscreteHodgeSystem::laplacian_matrix(int k) const {
  Eigen::SparseMatrix<double> m(size(k), size(k));
  if (k > 0) m += Eigen::SparseMatrix<double>(d_[k - 1] * d_[k - 1].transpose());
  if (k < dim()) m += Eigen::SparseMatrix<double>(d_[k].transpose() * d_[k]);
  return m;
}

VectorXd DiscreteHodgeSystem::harmonic_projection(int k, const VectorXd& a) const {
  require(static_cast<std::size_t>(a.size()) == size(k), ErrorCode::degree_mismatch, "cochain length does not match degree");
  const MatrixXd& h = harmonic_[k];
  return h * (lattice_.cell_volume() * (h.transpose() * a));
}

VectorXd DiscreteHodgeSystem::green(int k, const VectorXd& a, GreenSolver solver, GreenStats* stats) const {
  require(static_cast<std::size_t>(a.size()) == size(k), ErrorCode::degree_mismatch, "cochain length does not match degree");
  VectorXd x;
  if (solver == GreenSolver::cg) {
    x = green_cg(k, a, stats);
  } else {
    x = green_fft(k, a);
    if (stats) {
      stats->used = GreenSolver::fft;
      stats->iterations = 0;
    }
  }
  if (stats) {
    const VectorXd b = a - harmonic_projection(k, a);
    const double an = a.norm();
    stats->residual = an > 0.0 ? (laplacian(k, x) - b).norm() / an : 0.0;
  }
  return x;
}

VectorXd DiscreteHodgeSystem::green_fft(int k, const VectorXd& a) const {
  const std::size_t nodes = lattice_.nodes();
  const int ch = forms::binomial(dim(), k);
  Transform t(lattice_.shape());
  VectorXd x(a.size());
  for (int c = 0; c < ch; ++c) {
    Cplx* buf = t.data();
    for (std::size_t i = 0; i < nodes; ++i) buf[i] = a[c * nodes + i];
    t.forward();
    for (std::size_t i = 0; i < nodes; ++i) buf[i] = spectrum_[i] > zero_tol_ ? buf[i] / spectrum_[i] : 0.0;
    t.backward();
    for (std::size_t i = 0; i < nodes; ++i) x[c * nodes + i] = buf[i].real() / double(nodes);
  }
  return x;
}

VectorXd DiscreteHodgeSystem::green_cg(int k, const VectorXd& a, GreenStats* stats) const {
  const Eigen::SparseMatrix<double> lap = laplacian_matrix(k);
  const VectorXd b = a - harmonic_projection(k, a);
  VectorXd x = VectorXd::Zero(a.size());
  VectorXd r = b, p = r;
  double rr = r.squaredNorm();
  const double target = 1e-28 * std::max(b.squaredNorm(), 1e-300);
  const int max_iter = static_cast<int>(10 * a.size()) + 100;
  int it = 0;
  for (; it < max_iter && rr > target; ++it) {
    const VectorXd ap = lap * p;
    const double alpha = rr / p.dot(ap);
    x += alpha * p;
    r -= alpha * ap;
    if (it % 50 == 49) {
      // recompute to limit drift and keep iterates off the kernel
      x -= harmonic_projection(k, x);
      r = b - lap * x;
    }
    const double rr_new = r.squaredNorm();
    p = r + (rr_new / rr) * p;
    rr = rr_new;
  }
  x -= harmonic_projection(k, x);
  if (stats) {
    stats->used = GreenSolver::cg;
    stats->iterations = it;
  }
  const double rel = std::sqrt((b - lap * x).squaredNorm() / std::max(b.squaredNorm(), 1e-300));
  if (rel > 1e-12 && b.squaredNorm() > 0.0)
    fail(ErrorCode::non_convergence, "conjugate gradient stalled at relative residual " + std::to_string(rel));
  return x;
}

HodgeSplit hodge_decompose(const DiscreteHodgeSystem& s, int k, const VectorXd& a) {
  const VectorXd g = s.green(k, a);
  HodgeSplit out;
  const VectorXd zero = VectorXd::Zero(a.size());
  out.exact = k > 0 ? s.d(k - 1, s.delta(k, g)) : zero;
  out.coexact = k < s.dim() ? s.delta(k + 1, s.d(k, g)) : zero;
  out.harmonic = s.harmonic_projection(k, a);
  const double an = s.norm(a);
  if (an == 0.0) return out;
  out.reconstruction_error = s.norm(out.exact + out.coexact + out.harmonic - a) / an;
  out.max_cross_inner = std::max({std::abs(s.inner(out.exact, out.coexact)), std::abs(s.inner(out.exact, out.harmonic)),
                                  std::abs(s.inner(out.coexact, out.harmonic))}) /
                        (an * an);
  return out;
}

double IdentityReport::worst() const {
  double w = std::max({d_green, delta_green, laplacian_green, green_laplacian, projector, laplacian_kernel, adjoint});
  return w;
}

std::vector<Sample> random_samples(const DiscreteHodgeSystem& s, int per_degree, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Sample> out;
  for (int k = 0; k <= s.dim(); ++k)
    for (int i = 0; i < per_degree; ++i) {
      VectorXd v(s.size(k));
      for (auto& x : v) x = g(rng);
      out.push_back({k, v});
    }
  return out;
}

namespace {

double rel(const VectorXd& diff, double ref) { return ref > 0.0 ? diff.norm() / ref : diff.norm(); }

}  // namespace

IdentityReport verify_identities(const DiscreteHodgeSystem& s, const std::vector<Sample>& samples) {
  IdentityReport r;
  const int n = s.dim();
  for (const auto& smp : samples) {
    const int k = smp.degree;
    const VectorXd& a = smp.values;
    const double an = a.norm();
    const VectorXd ga = s.green(k, a);
    const VectorXd ha = s.harmonic_projection(k, a);
    if (k < n) {
      const VectorXd lhs = s.d(k, ga), rhs = s.green(k + 1, s.d(k, a));
      r.d_green = std::max(r.d_green, rel(lhs - rhs, std::max(lhs.norm(), rhs.norm())));
    }
    if (k > 0) {
      const VectorXd lhs = s.delta(k, ga), rhs = s.green(k - 1, s.delta(k, a));
      r.delta_green = std::max(r.delta_green, rel(lhs - rhs, std::max(lhs.norm(), rhs.norm())));
    }
    r.laplacian_green = std::max(r.laplacian_green, rel(s.laplacian(k, ga) - (a - ha), an));
    r.green_laplacian = std::max(r.green_laplacian, rel(s.green(k, s.laplacian(k, a)) - (a - ha), an));
    r.projector = std::max(r.projector, rel(s.harmonic_projection(k, ha) - ha, an));
    const VectorXd la = s.laplacian(k, a);
    r.laplacian_kernel = std::max(r.laplacian_kernel, rel(s.laplacian(k, a - ha) - la, la.norm()));
    if (k < n)
      for (const auto& other : samples)
        if (other.degree == k + 1) {
          const VectorXd da = s.d(k, a);
          const double lhs = s.inner(da, other.values), rhs = s.inner(a, s.delta(k + 1, other.values));
          r.adjoint = std::max(r.adjoint, std::abs(lhs - rhs) / std::max(s.norm(da) * s.norm(other.values), 1e-300));
          break;
        }
    const VectorXd gc = s.green(k, a, GreenSolver::cg);
    r.fft_vs_cg = std::max(r.fft_vs_cg, rel(ga - gc, ga.norm()));
  }
  // sigma_min([Delta; H]): harmonic directions give 1, the rest their eigenvalue.
  for (int k = 0; k <= n; ++k) r.kernel_margin.push_back(std::min(1.0, s.spectral_gap()));
  return r;
}

namespace {

MatrixXd column_basis(const MatrixXd& m, int& rank) {
  rank = 0;
  if (m.size() == 0) return MatrixXd(m.rows(), 0);
  Eigen::BDCSVD<MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv[0] == 0.0) return MatrixXd(m.rows(), 0);
  rank = static_cast<int>((sv.array() > 1e-10 * sv[0]).count());
  return svd.matrixU().leftCols(rank);
}

double containment(const MatrixXd& a, const MatrixXd& basis) {
  const double an = a.norm();
  if (an == 0.0) return 0.0;
  return (a - basis * (basis.transpose() * a)).norm() / an;
}

}  // namespace

ImageIdentityReport image_identity_check(const DiscreteHodgeSystem& s, int k) {
  require(k >= 0 && k <= s.dim(), ErrorCode::degree_mismatch, "degree out of range");
  require(s.size(k) <= 4096, ErrorCode::unsupported, "image identity check is dense; lattice too large");
  ImageIdentityReport r;
  r.degree = k;
  if (k == s.dim()) {
    r.equal = true;
    return r;
  }
  const MatrixXd delta(s.delta_matrix(k + 1));
  const MatrixXd delta_d = delta * MatrixXd(s.d_matrix(k));
  const MatrixXd ub = column_basis(delta, r.rank_delta);
  const MatrixXd ua = column_basis(delta_d, r.rank_delta_d);
  r.forward_residual = containment(delta_d, ub);
  r.backward_residual = containment(delta, ua);
  r.equal = r.rank_delta == r.rank_delta_d && r.forward_residual <= 1e-10 && r.backward_residual <= 1e-10;
  return r;
}

}  // namespace lqp::hodge

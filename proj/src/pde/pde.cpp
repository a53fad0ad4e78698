#include "lqp/pde/pde.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lqp/error.hpp"
#include "lqp/forms/calculus.hpp"
#include "lqp/forms/multiindex.hpp"

namespace lqp::pde {

namespace {


/// Squared channel norm of an (k+1)-cochain at every node.
VectorXd node_norm2(const VectorXd& v, std::size_t nodes) {
  VectorXd s = VectorXd::Zero(static_cast<Eigen::Index>(nodes));
  const std::size_t channels = static_cast<std::size_t>(v.size()) / nodes;
  for (std::size_t c = 0; c < channels; ++c)
    s += v.segment(static_cast<Eigen::Index>(c * nodes), static_cast<Eigen::Index>(nodes)).cwiseAbs2();
  return s;
}

/// (s + eps^2)^{p/2} / p with s = |v|^2, and the difference to s + ds
/// evaluated without cancellation.
double phi(double s, double p, double eps2) { return std::pow(s + eps2, 0.5 * p) / p; }
double phi_difference(double s, double ds, double p, double eps2) {
  const double s0 = s + eps2;
  if (s0 <= 0.0) return std::pow(std::max(ds, 0.0), 0.5 * p) / p;
  return std::pow(s0, 0.5 * p) * std::expm1(0.5 * p * std::log1p(ds / s0)) / p;
}

/// Component of v orthogonal to the closed k-forms: delta G d v.
VectorXd coclosed_part(const hodge::DiscreteHodgeSystem& sys, int k, const VectorXd& v) {
  if (k == sys.dim()) return VectorXd::Zero(v.size());
  return sys.delta(k + 1, sys.green(k + 1, sys.d(k, v)));
}

/// I(theta + t dir) - I(theta).
double energy_difference(const VectorXd& theta, const VectorXd& dir, double t,
                         const PLaplaceProblem& pr, double eps) {
  const auto& sys = pr.system();
  const int k = pr.degree();
  const std::size_t nodes = sys.lattice().nodes();
  double sum = 0.0;
  if (k < sys.dim()) {
    const VectorXd v = sys.d(k, theta);
    const VectorXd u = t * sys.d(k, dir);
    const VectorXd s = node_norm2(v, nodes);
    const VectorXd uu = node_norm2(u, nodes);
    VectorXd vu = VectorXd::Zero(static_cast<Eigen::Index>(nodes));
    const std::size_t channels = static_cast<std::size_t>(v.size()) / nodes;
    for (std::size_t c = 0; c < channels; ++c) {
      const auto off = static_cast<Eigen::Index>(c * nodes);
      const auto len = static_cast<Eigen::Index>(nodes);
      vu += v.segment(off, len).cwiseProduct(u.segment(off, len));
    }
    for (std::size_t i = 0; i < nodes; ++i)
      sum += phi_difference(s[i], 2.0 * vu[i] + uu[i], pr.p(), eps * eps);
  }
  return pr.weight() * (sum - t * pr.source().dot(dir));
}

VectorXd green_direction(const PLaplaceProblem& pr, const VectorXd& g) {
  const auto& sys = pr.system();
  return -coclosed_part(sys, pr.degree(), sys.green(pr.degree(), g));
}

double effective_regularization(const PLaplaceProblem& pr, double eps) {
  return pr.p() < 2.0 ? eps : 0.0;
}

}  // namespace

PLaplaceProblem::PLaplaceProblem(std::shared_ptr<const geometry::Grid> grid, int k, double p,
                                 const forms::DifferentialForm& source, double q)
    : k_(k), p_(p), q_(q) {
  require(grid != nullptr, ErrorCode::invalid_argument, "problem needs a grid");
  system_ = std::make_shared<const hodge::DiscreteHodgeSystem>(grid);
  const int n = system_->dim();
  require(source.dim() == n, ErrorCode::degree_mismatch, "source dimension differs from the grid");
  if (k == 0 && source.degree() == n && n > 0) {
    alpha_ = system_->lattice().sample(forms::hodge_star(source, geometry::DiagonalMetric::euclidean(n)));
  } else {
    require(source.degree() == k, ErrorCode::degree_mismatch, "source must have the degree of theta");
    alpha_ = system_->lattice().sample(source);
  }
  init();
}

PLaplaceProblem::PLaplaceProblem(std::shared_ptr<const hodge::DiscreteHodgeSystem> system, int k,
                                 double p, VectorXd source, double q)
    : system_(std::move(system)), k_(k), p_(p), q_(q), alpha_(std::move(source)) {
  require(system_ != nullptr, ErrorCode::invalid_argument, "problem needs a lattice system");
  init();
}

void PLaplaceProblem::init() {
  require(k_ >= 0 && k_ <= system_->dim(), ErrorCode::degree_mismatch, "degree out of range");
  require(p_ > 1.0 && std::isfinite(p_), ErrorCode::invalid_argument, "need 1 < p < inf");
  require(q_ >= 1.0, ErrorCode::invalid_argument, "need q >= 1");
  require(static_cast<std::size_t>(alpha_.size()) == system_->size(k_), ErrorCode::invalid_argument,
          "source cochain has the wrong length");
  w_ = system_->lattice().cell_volume();
  defect_ = compatibility(alpha_, *system_, k_);
}

bool PLaplaceProblem::compatible(double tolerance) const {
  double vol = w_ * static_cast<double>(system_->lattice().nodes());
  const double scale = system_->norm(alpha_) * std::max(1.0, std::sqrt(vol));
  for (const auto& d : defect_)
    if (std::abs(d.value) > tolerance * std::max(scale, 1e-300)) return false;
  return true;
}

std::vector<Defect> compatibility(const VectorXd& alpha, const hodge::DiscreteHodgeSystem& sys, int k) {
  std::vector<Defect> out;
  const std::size_t nodes = sys.lattice().nodes();
  const double w = sys.lattice().cell_volume();
  const auto& chans = forms::basis(sys.dim(), k);
  for (std::size_t c = 0; c < chans.size(); ++c) {
    const std::string name = k == 0 ? "<alpha, 1>" : "<alpha, " + forms::label(chans[c]) + ">";
    out.push_back({name, w * alpha.segment(static_cast<Eigen::Index>(c * nodes),
                                           static_cast<Eigen::Index>(nodes)).sum()});
  }
  if (k > 0) out.push_back({"exact part", sys.norm(sys.d(k - 1, sys.delta(k, sys.green(k, alpha))))});
  return out;
}

double energy(const VectorXd& theta, const PLaplaceProblem& pr, double regularization) {
  const auto& sys = pr.system();
  require(static_cast<std::size_t>(theta.size()) == pr.unknowns(), ErrorCode::degree_mismatch,
          "theta has the wrong length");
  const double eps2 = regularization * regularization;
  double sum = 0.0;
  if (pr.degree() < sys.dim()) {
    const VectorXd s = node_norm2(sys.d(pr.degree(), theta), sys.lattice().nodes());
    for (Eigen::Index i = 0; i < s.size(); ++i) sum += phi(s[i], pr.p(), eps2);
    if (eps2 > 0.0) sum -= static_cast<double>(s.size()) * phi(0.0, pr.p(), eps2);
  }
  return pr.weight() * (sum - pr.source().dot(theta));
}

VectorXd weak_gradient(const VectorXd& theta, const PLaplaceProblem& pr, double regularization) {
  const auto& sys = pr.system();
  const int k = pr.degree();
  VectorXd g = -pr.weight() * pr.source();
  if (k == sys.dim()) return g;
  VectorXd v = sys.d(k, theta);
  const std::size_t nodes = sys.lattice().nodes();
  const VectorXd s = node_norm2(v, nodes);
  const double eps2 = regularization * regularization;
  const std::size_t channels = static_cast<std::size_t>(v.size()) / nodes;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double base = s[i] + eps2;
    const double f = base > 0.0 ? std::pow(base, 0.5 * (pr.p() - 2.0)) : 0.0;
    for (std::size_t c = 0; c < channels; ++c) v[c * nodes + i] *= f;
  }
  // D^T is delta up to the uniform weight.
  return g + pr.weight() * sys.delta(k + 1, v);
}

double weak_residual(const VectorXd& theta, const PLaplaceProblem& pr, const Eigen::MatrixXd& basis,
                     double regularization) {
  const VectorXd g = weak_gradient(theta, pr, regularization);
  const double w = pr.weight();
  if (basis.size() == 0) return g.cwiseAbs().maxCoeff() / std::sqrt(w);
  require(basis.rows() == g.size(), ErrorCode::invalid_argument, "test basis has the wrong length");
  double worst = 0.0;
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    const double nrm = std::sqrt(w * basis.col(j).squaredNorm());
    if (nrm > 0.0) worst = std::max(worst, std::abs(g.dot(basis.col(j))) / nrm);
  }
  return worst;
}

const char* to_string(Termination t) noexcept {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iterations: return "max_iterations";
    case Termination::stalled: return "stalled";
    case Termination::direct: return "direct";
  }
  return "?";
}

bool SolveTrace::energy_nonincreasing() const {
  for (std::size_t i = 1; i < energies.size(); ++i) {
    const double slack = 1e-13 * std::max({std::abs(energies[i]), std::abs(energies[i - 1]), 1e-300});
    if (energies[i] > energies[i - 1] + slack) return false;
  }
  return true;
}

forms::DifferentialForm Solution::as_form() const { return system->lattice().to_form(theta, degree); }

Solution solve(const PLaplaceProblem& pr, const SolveOptions& options) {
  require(options.rtol > 0.0 && options.max_iterations > 0, ErrorCode::invalid_argument,
          "solver tolerances must be positive");
  if (!pr.compatible()) {
    std::ostringstream msg;
    msg << "incompatible source:";
    for (const auto& d : pr.defect()) msg << " " << d.name << " = " << d.value << ";";
    fail(ErrorCode::incompatible_source, msg.str());
  }
  const auto& sys = pr.system();
  const int k = pr.degree();
  require(k < sys.dim(), ErrorCode::unsupported, "top-degree theta has d theta = 0");
  Solution sol;
  sol.system = pr.system_ptr();
  sol.degree = k;
  SolveTrace& tr = sol.trace;
  const VectorXd zero = VectorXd::Zero(static_cast<Eigen::Index>(pr.unknowns()));
  const double r0 = std::max(weak_residual(zero, pr), 1e-300);

  if (pr.p() == 2.0) {
    const Eigen::SparseMatrix<double> A = sys.d_matrix(k).transpose() * sys.d_matrix(k);
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(1e-15);
    cg.setMaxIterations(10 * static_cast<int>(pr.unknowns()));
    cg.compute(A);
    VectorXd theta = cg.solve(pr.source());
    theta = coclosed_part(sys, k, theta);
    tr.energies = {energy(zero, pr), energy(theta, pr)};
    tr.iterations = static_cast<int>(cg.iterations());
    tr.final_residual = tr.regularized_residual = weak_residual(theta, pr);
    tr.residuals = {r0, tr.final_residual};
    tr.steps = {1.0};
    tr.termination = Termination::direct;
    sol.theta = std::move(theta);
    return sol;
  }

  double eps = effective_regularization(pr, options.regularization);
  VectorXd theta = zero;
  VectorXd g = weak_gradient(theta, pr, eps);
  tr.energies.push_back(energy(theta, pr));
  tr.residuals.push_back(weak_residual(theta, pr, {}, eps));
  double step = 1.0;
  bool annealed = eps == 0.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    if (tr.residuals.back() <= options.rtol * r0) {
      if (annealed) {
        tr.termination = Termination::converged;
        break;
      }
      tr.regularized_residual = tr.residuals.back();
      eps = 0.0;
      annealed = true;
      g = weak_gradient(theta, pr, eps);
      tr.residuals.back() = weak_residual(theta, pr);
      continue;
    }
    const VectorXd dir = green_direction(pr, g);
    const double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      tr.termination = Termination::stalled;
      break;
    }
    double t = step;
    double delta = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      delta = energy_difference(theta, dir, t, pr, eps);
      if (delta <= options.armijo * t * slope) {
        accepted = true;
        break;
      }
      t *= options.backtrack;
    }
    if (!accepted) {
      tr.termination = Termination::stalled;
      break;
    }
    const VectorXd s = t * dir;
    theta += s;
    const VectorXd g_new = weak_gradient(theta, pr, eps);
    const VectorXd y = g_new - g;
    const double sy = s.dot(y);
    // BB1 in the metric of the preconditioner: s' Delta s / s' y
    step = sy > 0.0 ? s.dot(sys.laplacian(k, s)) / sy : 2.0 * t;
    g = g_new;
    tr.iterations = it + 1;
    tr.steps.push_back(t);
    tr.energies.push_back(energy(theta, pr));
    tr.residuals.push_back(weak_residual(theta, pr, {}, eps));
  }
  tr.final_residual = weak_residual(theta, pr);
  if (!annealed) tr.regularized_residual = weak_residual(theta, pr, {}, eps);
  else if (pr.p() >= 2.0) tr.regularized_residual = tr.final_residual;
  sol.theta = std::move(theta);
  return sol;
}

double gradient_check(const PLaplaceProblem& pr, const VectorXd& theta, int directions, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  const VectorXd g = weak_gradient(theta, pr);
  double worst = 0.0;
  for (int j = 0; j < directions; ++j) {
    VectorXd v(g.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normal(rng);
    v /= v.cwiseAbs().maxCoeff();
    // keep |h d v| well below the smallest |d theta| so the FD truncation stays small for p < 3
    double h = 1e-4 * std::max(1.0, theta.cwiseAbs().maxCoeff());
    if (pr.degree() < pr.system().dim()) {
      const VectorXd s = node_norm2(pr.system().d(pr.degree(), theta), pr.system().lattice().nodes()).cwiseSqrt();
      const double floor = std::max(s.minCoeff(), 1e-8 * s.maxCoeff());
      const double dv = pr.system().d(pr.degree(), v).cwiseAbs().maxCoeff();
      if (dv > 0.0 && floor > 0.0) h = std::min(h, 1e-4 * floor / dv);
    }
    const double fd = (energy_difference(theta, v, h, pr, 0.0) - energy_difference(theta, v, -h, pr, 0.0)) / (2 * h);
    const double exact = g.dot(v);
    worst = std::max(worst, std::abs(fd - exact) / std::max(std::abs(exact), 1e-300));
  }
  return worst;
}

std::string trace_csv(const SolveTrace& trace) {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,energy,residual,step\n";
  for (std::size_t i = 0; i < trace.energies.size(); ++i) {
    out << i << ',' << trace.energies[i] << ',' << (i < trace.residuals.size() ? trace.residuals[i] : 0.0)
        << ',' << (i > 0 && i - 1 < trace.steps.size() ? trace.steps[i - 1] : 0.0) << '\n';
  }
  return out.str();
}

}  // namespace lqp::pde

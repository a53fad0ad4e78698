#pragma once

// The p-Laplace equation delta(|d theta|^{p-2} d theta) = alpha on the
// staggered lattice of a circle or torus, solved by energy minimization.

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "lqp/forms/form.hpp"
#include "lqp/geometry/geometry.hpp"
#include "lqp/hodge/hodge.hpp"

namespace lqp::pde {

using Eigen::VectorXd;

struct Defect {
  /// Test form name: "<alpha, dx^I>" for harmonic forms, "exact part" for
  /// sup over exact phi of |<alpha, phi>| / ||phi||.
  std::string name;
  double value = 0.0;
};

/// Discrete problem. Cochains follow hodge::DiscreteHodgeSystem; |d theta|
/// at a node is the Euclidean norm over the channels of d theta at that node.
class PLaplaceProblem {
 public:
  /// A top-degree source with k = 0 is converted to its Hodge dual function.
  PLaplaceProblem(std::shared_ptr<const geometry::Grid> grid, int k, double p,
                  const forms::DifferentialForm& source, double q = 2.0);
  PLaplaceProblem(std::shared_ptr<const hodge::DiscreteHodgeSystem> system, int k, double p,
                  VectorXd source, double q = 2.0);

  int degree() const noexcept { return k_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  const hodge::DiscreteHodgeSystem& system() const noexcept { return *system_; }
  std::shared_ptr<const hodge::DiscreteHodgeSystem> system_ptr() const noexcept { return system_; }
  const VectorXd& source() const noexcept { return alpha_; }
  double weight() const noexcept { return w_; }
  std::size_t unknowns() const { return system_->size(k_); }

  /// Defect vector recorded at construction.
  const std::vector<Defect>& defect() const noexcept { return defect_; }
  /// max |defect| / (||alpha|| sqrt(vol)) <= tolerance.
  bool compatible(double tolerance = 1e-8) const;

 private:
  void init();

  std::shared_ptr<const hodge::DiscreteHodgeSystem> system_;
  int k_;
  double p_, q_;
  VectorXd alpha_;
  double w_ = 0.0;
  std::vector<Defect> defect_;
};

/// Pairings of alpha against the discrete closed k-forms: the harmonic basis
/// entry by entry and the exact subspace through its largest normalized pairing.
std::vector<Defect> compatibility(const VectorXd& alpha, const hodge::DiscreteHodgeSystem& system,
                                  int k);

/// I(theta) = (1/p) sum w |d theta|^p - sum w <alpha, theta>.
double energy(const VectorXd& theta, const PLaplaceProblem& problem, double regularization = 0.0);

/// Gradient of I with respect to the cochain values, i.e. G(theta)[e_j].
VectorXd weak_gradient(const VectorXd& theta, const PLaplaceProblem& problem,
                       double regularization = 0.0);

/// max_j |G(theta)[phi_j]| / ||phi_j|| over the columns of `basis`; the unit
/// cochains when `basis` is empty.
double weak_residual(const VectorXd& theta, const PLaplaceProblem& problem,
                     const Eigen::MatrixXd& basis = {}, double regularization = 0.0);

enum class Termination { converged, max_iterations, stalled, direct };
const char* to_string(Termination t) noexcept;

struct SolveOptions {
  double rtol = 1e-10;
  int max_iterations = 5000;
  double armijo = 1e-4;
  double backtrack = 0.5;
  /// Used when p < 2; annealed to zero once the regularized solve converges.
  double regularization = 1e-8;
};

struct SolveTrace {
  std::vector<double> energies;
  std::vector<double> residuals;
  std::vector<double> steps;
  Termination termination = Termination::max_iterations;
  int iterations = 0;
  double final_residual = 0.0;
  /// Residual of the regularized functional (p < 2); equal to final_residual otherwise.
  double regularized_residual = 0.0;
  /// Consecutive energies may rise by at most 1e-13 of their magnitude
  /// (rounding of the quadrature sum).
  bool energy_nonincreasing() const;
};

struct Solution {
  VectorXd theta;
  SolveTrace trace;
  forms::DifferentialForm as_form() const;
  std::shared_ptr<const hodge::DiscreteHodgeSystem> system;
  int degree = 0;
};

/// Refuses an incompatible source with ErrorCode::incompatible_source. p = 2
/// solves delta d theta = alpha by conjugate gradients; other p run
/// Armijo-backtracked descent along the Green-preconditioned weak gradient
/// with Barzilai-Borwein initial steps, restricted to the L^2-orthogonal
/// complement of the closed forms. rtol is relative to the residual at
/// theta = 0. Non-convergence is reported in the trace, not thrown.
Solution solve(const PLaplaceProblem& problem, const SolveOptions& options = {});

/// Max relative error between the weak gradient and central differences of
/// the energy along `directions` random directions.
double gradient_check(const PLaplaceProblem& problem, const VectorXd& theta, int directions,
                      unsigned seed);

/// Trace as CSV: iteration,energy,residual,step.
std::string trace_csv(const SolveTrace& trace);

}  // namespace lqp::pde

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <memory>
#include <vector>

#include "lqp/complex/lattice.hpp"
#include "lqp/geometry/geometry.hpp"

namespace lqp::hodge {

using Eigen::VectorXd;

enum class GreenSolver { automatic, fft, cg };

struct GreenStats {
  GreenSolver used = GreenSolver::fft;
  int iterations = 0;
  /// ||Delta x - (a - H a)|| / ||a||.
  double residual = 0.0;
};

/// Cochains of a flat circle or torus on the staggered lattice, with the
/// quadrature inner product <a, b> = h^n a.b at every degree. Since all
/// weights agree, delta_k = D_{k-1}^T exactly.
class DiscreteHodgeSystem {
 public:
  explicit DiscreteHodgeSystem(std::shared_ptr<const geometry::Grid> grid);

  int dim() const noexcept { return lattice_.dim(); }
  const complex::StaggeredLattice& lattice() const noexcept { return lattice_; }
  std::size_t size(int k) const { return lattice_.size(k); }

  double inner(const VectorXd& a, const VectorXd& b) const;
  double norm(const VectorXd& a) const;

  /// D_k : C^k -> C^{k+1}; the zero vector of degree n+1 length 0 for k = n.
  VectorXd d(int k, const VectorXd& a) const;
  /// delta_k : C^k -> C^{k-1}; empty for k = 0.
  VectorXd delta(int k, const VectorXd& a) const;
  VectorXd laplacian(int k, const VectorXd& a) const;

  const Eigen::SparseMatrix<double>& d_matrix(int k) const { return d_[k]; }
  Eigen::SparseMatrix<double> delta_matrix(int k) const;
  Eigen::SparseMatrix<double> laplacian_matrix(int k) const;

  /// Orthonormal (in inner()) basis of ker Delta_k as columns.
  const Eigen::MatrixXd& harmonic_basis(int k) const { return harmonic_[k]; }
  int harmonic_dimension(int k) const { return static_cast<int>(harmonic_[k].cols()); }

  /// Eigenvalue of the scalar Laplacian at each lattice mode, row-major.
  const std::vector<double>& spectrum() const noexcept { return spectrum_; }
  /// Smallest nonzero eigenvalue of Delta (any degree; all share the scalar symbol).
  double spectral_gap() const noexcept { return gap_; }

  VectorXd harmonic_projection(int k, const VectorXd& a) const;
  /// x with Delta x = a - H a and H x = 0.
  VectorXd green(int k, const VectorXd& a, GreenSolver solver = GreenSolver::automatic,
                 GreenStats* stats = nullptr) const;

 private:
  VectorXd green_fft(int k, const VectorXd& a) const;
  VectorXd green_cg(int k, const VectorXd& a, GreenStats* stats) const;

  complex::StaggeredLattice lattice_;
  std::vector<Eigen::SparseMatrix<double>> d_;
  std::vector<Eigen::MatrixXd> harmonic_;
  std::vector<double> spectrum_;
  double gap_ = 0.0;
  double zero_tol_ = 0.0;
};

struct HodgeSplit {
  VectorXd exact, coexact, harmonic;
  /// ||exact + coexact + harmonic - a|| / ||a||.
  double reconstruction_error = 0.0;
  /// Largest |<u, v>| / ||a||^2 over the three pairs.
  double max_cross_inner = 0.0;
};

/// exact = d delta G a, coexact = delta d G a, harmonic = H a.
HodgeSplit hodge_decompose(const DiscreteHodgeSystem& system, int k, const VectorXd& a);

struct Sample {
  int degree = 0;
  VectorXd values;
};

/// Maximum relative error of each operator identity over a sample set.
struct IdentityReport {
  double d_green = 0.0;          // dG - Gd
  double delta_green = 0.0;      // delta G - G delta
  double laplacian_green = 0.0;  // Delta G - (I - H)
  double green_laplacian = 0.0;  // G Delta - (I - H)
  double projector = 0.0;        // H^2 - H
  double laplacian_kernel = 0.0; // Delta (I - H) - Delta
  double adjoint = 0.0;          // <d a, b> - <a, delta b>
  double fft_vs_cg = 0.0;        // the two Green solvers
  /// Smallest singular value of [Delta; H] per degree; positive means
  /// ker Delta and Im(I - H) meet only in 0.
  std::vector<double> kernel_margin;
  double worst() const;
};

IdentityReport verify_identities(const DiscreteHodgeSystem& system, const std::vector<Sample>& samples);

/// Random cochains of every degree, deterministic in seed.
std::vector<Sample> random_samples(const DiscreteHodgeSystem& system, int per_degree, unsigned seed);

struct ImageIdentityReport {
  int degree = 0;
  int rank_delta_d = 0;
  int rank_delta = 0;
  /// Least-squares residuals for Im(delta d) in Im(delta) and the converse.
  double forward_residual = 0.0;
  double backward_residual = 0.0;
  bool equal = false;
};

/// Compares the column spaces of delta_{k+1} d_k and delta_{k+1} on C^k.
/// Dense; intended for lattices with at most 4096 unknowns per degree.
ImageIdentityReport image_identity_check(const DiscreteHodgeSystem& system, int k);

}  // namespace lqp::hodge

#pragma once

// Staggered periodic lattice on circle/torus grids. A k-cochain stores one
// value per node and channel; channel dx^I is sampled at the node shifted by
// half a step along every axis in I. The axis difference
//   (S_a f)_i = (f_{i-1} - 27 f_i + 27 f_{i+1} - f_{i+2}) / (24 h_a)
// is a fourth-order approximation of the derivative at the half-step point.
// Its kernel is the constants, so the assembled complex has the cohomology of
// the torus.

#include <Eigen/Sparse>
#include <memory>
#include <vector>

#include "lqp/forms/form.hpp"
#include "lqp/geometry/geometry.hpp"

namespace lqp::complex {

class StaggeredLattice {
 public:
  /// Requires a circle or torus grid.
  explicit StaggeredLattice(std::shared_ptr<const geometry::Grid> grid);

  int dim() const noexcept { return n_; }
  std::size_t nodes() const noexcept { return nodes_; }
  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  double spacing(int axis) const { return spacing_[axis]; }
  double cell_volume() const noexcept { return cell_volume_; }
  const std::shared_ptr<const geometry::Grid>& grid() const noexcept { return grid_; }

  /// Length of a k-cochain vector: C(n,k) * nodes.
  std::size_t size(int k) const;

  /// N x N circulant S_a.
  const Eigen::SparseMatrix<double>& difference(int axis) const { return diff_[axis]; }

  /// d_k as a C(n,k+1)N x C(n,k)N block matrix of signed S_a.
  Eigen::SparseMatrix<double> d(int k) const;

  /// Samples a form at the staggered points of each channel.
  Eigen::VectorXd sample(const forms::DifferentialForm& form) const;

  /// Wraps a cochain as a sampled form carrying the staggered offsets.
  forms::DifferentialForm to_form(const Eigen::VectorXd& values, int k) const;

  /// Position of (node, channel) sample.
  std::vector<double> position(std::size_t node, int k, int channel) const;

 private:
  std::shared_ptr<const geometry::Grid> grid_;
  int n_;
  std::size_t nodes_;
  std::vector<std::size_t> shape_;
  std::vector<double> spacing_;
  double cell_volume_;
  std::vector<Eigen::SparseMatrix<double>> diff_;
};

}  // namespace lqp::complex

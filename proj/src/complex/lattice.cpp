#include "lqp/complex/lattice.hpp"

#include "lqp/error.hpp"

namespace lqp::complex {

using forms::basis;
using forms::binomial;
using forms::Mask;

StaggeredLattice::StaggeredLattice(std::shared_ptr<const geometry::Grid> grid) : grid_(std::move(grid)) {
  require(grid_ != nullptr, ErrorCode::invalid_argument, "lattice needs a grid");
  const auto kind = grid_->domain().kind();
  require(kind == geometry::DomainKind::circle || kind == geometry::DomainKind::torus,
          ErrorCode::domain_error, "staggered lattice needs a compact periodic domain");
  n_ = grid_->dim();
  nodes_ = grid_->size();
  shape_ = grid_->shape();
  cell_volume_ = 1.0;
  for (int a = 0; a < n_; ++a) {
    const auto& axis = grid_->axes()[a];
    spacing_.push_back(axis.nodes[1] - axis.nodes[0]);
    cell_volume_ *= spacing_.back();
  }

  for (int a = 0; a < n_; ++a) {
    std::size_t stride = 1;
    for (int b = n_ - 1; b > a; --b) stride *= shape_[b];
    const long count = static_cast<long>(shape_[a]);
    const double scale = 1.0 / (24.0 * spacing_[a]);
    const long offsets[4] = {-1, 0, 1, 2};
    const double coeffs[4] = {1.0, -27.0, 27.0, -1.0};
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(4 * nodes_);
    for (std::size_t i = 0; i < nodes_; ++i) {
      const long pos = static_cast<long>((i / stride) % shape_[a]);
      for (int s = 0; s < 4; ++s) {
        const long shifted = ((pos + offsets[s]) % count + count) % count;
        const std::size_t j = i + (shifted - pos) * static_cast<long>(stride);
        t.emplace_back(static_cast<int>(i), static_cast<int>(j), coeffs[s] * scale);
      }
    }
    Eigen::SparseMatrix<double> s(nodes_, nodes_);
    s.setFromTriplets(t.begin(), t.end());
    diff_.push_back(std::move(s));
  }
}

std::size_t StaggeredLattice::size(int k) const {
  require(k >= 0 && k <= n_, ErrorCode::degree_mismatch, "cochain degree out of range");
  return static_cast<std::size_t>(binomial(n_, k)) * nodes_;
}

Eigen::SparseMatrix<double> StaggeredLattice::d(int k) const {
  require(k >= 0 && k < n_, ErrorCode::degree_mismatch, "no differential out of the top degree");
  const auto& in = basis(n_, k);
  const auto& out = basis(n_, k + 1);
  std::vector<Eigen::Triplet<double>> t;
  for (std::size_t J = 0; J < out.size(); ++J)
    for (int j = 0; j < n_; ++j) {
      const Mask bit = Mask{1} << j;
      if (!(out[J] & bit)) continue;
      const double sign = (forms::rank_below(out[J], j) % 2) ? -1.0 : 1.0;
      const int I = forms::index_of(n_, out[J] & ~bit);
      const auto& s = diff_[j];
      for (int c = 0; c < s.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(s, c); it; ++it)
          t.emplace_back(static_cast<int>(J * nodes_ + it.row()), static_cast<int>(I * nodes_ + it.col()),
                         sign * it.value());
    }
  Eigen::SparseMatrix<double> m(out.size() * nodes_, in.size() * nodes_);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

std::vector<double> StaggeredLattice::position(std::size_t node, int k, int channel) const {
  const Mask m = basis(n_, k)[channel];
  auto p = grid_->point(node);
  std::vector<double> x(p.begin(), p.end());
  for (int a = 0; a < n_; ++a)
    if (m & (Mask{1} << a)) x[a] += 0.5 * spacing_[a];
  return x;
}

Eigen::VectorXd StaggeredLattice::sample(const forms::DifferentialForm& form) const {
  require(form.dim() == n_, ErrorCode::invalid_argument, "form and lattice dimensions differ");
  const int k = form.degree(), ch = form.channels();
  Eigen::VectorXd v(size(k));
  std::vector<double> coeffs(ch);
  for (int c = 0; c < ch; ++c)
    for (std::size_t i = 0; i < nodes_; ++i) {
      const auto x = position(i, k, c);
      form.evaluate(x, coeffs);
      v[c * nodes_ + i] = coeffs[c];
    }
  return v;
}

forms::DifferentialForm StaggeredLattice::to_form(const Eigen::VectorXd& values, int k) const {
  require(static_cast<std::size_t>(values.size()) == size(k), ErrorCode::invalid_argument,
          "cochain length does not match degree");
  forms::SampledData data{grid_, std::vector<double>(values.data(), values.data() + values.size()), 3, {}};
  for (Mask m : basis(n_, k)) {
    std::array<double, forms::max_dim> o{};
    for (int a = 0; a < n_; ++a)
      if (m & (Mask{1} << a)) o[a] = 0.5;
    data.offsets.push_back(o);
  }
  return forms::DifferentialForm::sampled(k, std::move(data));
}

}  // namespace lqp::complex

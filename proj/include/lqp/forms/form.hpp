#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lqp/forms/autodiff.hpp"
#include "lqp/forms/multiindex.hpp"
#include "lqp/geometry/geometry.hpp"

namespace lqp::forms {

class DifferentialForm;

/// Node values of a form on a grid, channel-major: values[c * nodes + i].
struct SampledData {
  std::shared_ptr<const geometry::Grid> grid;
  std::vector<double> values;
  /// 1 (multilinear) or 3 (cubic Lagrange).
  int interpolation_order = 3;
  /// Per-channel offset of the sample lattice, in units of grid spacing per axis.
  /// Nonzero for staggered cochains; zero for collocated samples.
  std::vector<std::array<double, max_dim>> offsets;

  bool collocated() const;
};

/// A degree-k differential form on R^n (n <= 3), stored either as analytic
/// coefficient callables or as samples over a grid. Forms are immutable values;
/// copies share state.
class DifferentialForm {
 public:
  using Eval = std::function<void(std::span<const double> x, std::span<double> coeffs)>;
  /// grads[c * n + j] = d coeff_c / d x^j.
  using Jet = std::function<void(std::span<const double> x, std::span<double> coeffs,
                                 std::span<double> grads)>;

  static DifferentialForm analytic(int n, int k, Eval eval, Jet jet = {},
                                   std::shared_ptr<const DifferentialForm> exact_differential = {},
                                   std::string label = {});
  static DifferentialForm sampled(int k, SampledData data, std::string label = {});
  static DifferentialForm zero(int n, int k);
  /// Constant-coefficient form.
  static DifferentialForm constant(int n, int k, std::vector<double> coeffs);

  int dim() const noexcept;
  int degree() const noexcept;
  int channels() const noexcept { return binomial(dim(), degree()); }
  const std::string& label() const noexcept;

  bool is_analytic() const noexcept;
  bool is_sampled() const noexcept { return !is_analytic(); }
  bool has_jet() const noexcept;
  const DifferentialForm* exact_differential() const noexcept;

  void evaluate(std::span<const double> x, std::span<double> coeffs) const;
  std::vector<double> operator()(std::span<const double> x) const;
  std::vector<double> operator()(std::initializer_list<double> x) const;
  void jet(std::span<const double> x, std::span<double> coeffs, std::span<double> grads) const;

  /// Throws unless sampled.
  const SampledData& samples() const;

  DifferentialForm with_label(std::string label) const;

 private:
  struct Impl;
  explicit DifferentialForm(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

namespace detail {

template <class S>
std::array<S, max_dim> seed(std::span<const double> x, int n) {
  std::array<S, max_dim> xs{};
  for (int j = 0; j < n; ++j) {
    xs[j] = S(x[j]);
    xs[j].d[j] = 1.0;
  }
  return xs;
}

template <class Fn>
DifferentialForm differential_of(int n, int k, Fn fn, const std::string& label) {
  using D1 = Dual<double>;
  using D2 = Dual<D1>;
  auto eval = [n, k, fn](std::span<const double> x, std::span<double> out) {
    auto xs = seed<D1>(x, n);
    std::array<D1, 3> c{};
    fn(xs.data(), c.data());
    const auto& out_basis = basis(n, k + 1);
    for (std::size_t J = 0; J < out_basis.size(); ++J) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        const Mask bit = Mask{1} << j;
        if (!(out_basis[J] & bit)) continue;
        const int sign = (rank_below(out_basis[J], j) % 2) ? -1 : 1;
        s += sign * c[index_of(n, out_basis[J] & ~bit)].d[j];
      }
      out[J] = s;
    }
  };
  auto jet = [n, k, fn](std::span<const double> x, std::span<double> out, std::span<double> grads) {
    std::array<D2, max_dim> xs{};
    for (int j = 0; j < n; ++j) {
      xs[j].v = D1(x[j]);
      xs[j].v.d[j] = 1.0;
      xs[j].d[j] = D1(1.0);
    }
    std::array<D2, 3> c{};
    fn(xs.data(), c.data());
    const auto& out_basis = basis(n, k + 1);
    for (std::size_t J = 0; J < out_basis.size(); ++J) {
      double s = 0.0;
      std::array<double, max_dim> g{};
      for (int j = 0; j < n; ++j) {
        const Mask bit = Mask{1} << j;
        if (!(out_basis[J] & bit)) continue;
        const int sign = (rank_below(out_basis[J], j) % 2) ? -1 : 1;
        const D2& cj = c[index_of(n, out_basis[J] & ~bit)];
        s += sign * cj.v.d[j];
        for (int m = 0; m < n; ++m) g[m] += sign * cj.d[m].d[j];
      }
      out[J] = s;
      for (int m = 0; m < n; ++m) grads[J * n + m] = g[m];
    }
  };
  return DifferentialForm::analytic(n, k + 1, eval, jet, {}, label.empty() ? "" : "d(" + label + ")");
}

}  // namespace detail

/// Builds an analytic form from a generic callable fn(const S* x, S* coeffs)
/// that works for S = double and nested dual numbers. The result carries an
/// exact jet and (for k < n) an exact differential with its own jet.
template <class Fn>
DifferentialForm make_form(int n, int k, Fn fn, std::string label = {}) {
  using D1 = Dual<double>;
  auto eval = [n, fn](std::span<const double> x, std::span<double> out) {
    std::array<double, max_dim> xs{};
    for (int j = 0; j < n; ++j) xs[j] = x[j];
    std::array<double, 3> c{};
    fn(xs.data(), c.data());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c[i];
  };
  auto jet = [n, fn](std::span<const double> x, std::span<double> out, std::span<double> grads) {
    auto xs = detail::seed<D1>(x, n);
    std::array<D1, 3> c{};
    fn(xs.data(), c.data());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = c[i].v;
      for (int j = 0; j < n; ++j) grads[i * n + j] = c[i].d[j];
    }
  };
  std::shared_ptr<const DifferentialForm> d;
  if (k < n) d = std::make_shared<const DifferentialForm>(detail::differential_of(n, k, fn, label));
  return DifferentialForm::analytic(n, k, eval, jet, d, std::move(label));
}

}  // namespace lqp::forms

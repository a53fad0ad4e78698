#include "lqp/forms/form.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lqp/error.hpp"

namespace lqp::forms {

struct DifferentialForm::Impl {
  int n = 1;
  int k = 0;
  std::string label;
  Eval eval;
  Jet jet;
  std::shared_ptr<const DifferentialForm> exact_d;
  std::optional<SampledData> sampled;
};

bool SampledData::collocated() const {
  return std::all_of(offsets.begin(), offsets.end(), [](const auto& o) {
    return std::all_of(o.begin(), o.end(), [](double v) { return v == 0.0; });
  });
}

DifferentialForm DifferentialForm::analytic(int n, int k, Eval eval, Jet jet,
                                            std::shared_ptr<const DifferentialForm> exact_d,
                                            std::string label) {
  require(n >= 1 && n <= max_dim, ErrorCode::unsupported, "form dimension must be 1, 2 or 3");
  require(k >= 0 && k <= n, ErrorCode::degree_mismatch, "form degree out of range");
  require(static_cast<bool>(eval), ErrorCode::invalid_argument, "analytic form needs an evaluator");
  if (exact_d)
    require(exact_d->degree() == k + 1 && exact_d->dim() == n, ErrorCode::degree_mismatch,
            "attached differential must have degree k+1");
  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->k = k;
  impl->label = std::move(label);
  impl->eval = std::move(eval);
  impl->jet = std::move(jet);
  impl->exact_d = std::move(exact_d);
  return DifferentialForm(std::move(impl));
}

DifferentialForm DifferentialForm::sampled(int k, SampledData data, std::string label) {
  require(data.grid != nullptr, ErrorCode::invalid_argument, "sampled form needs a grid");
  const int n = data.grid->dim();
  require(k >= 0 && k <= n, ErrorCode::degree_mismatch, "form degree out of range");
  require(data.interpolation_order == 1 || data.interpolation_order == 3,
          ErrorCode::invalid_argument, "interpolation order must be 1 or 3");
  const std::size_t channels = static_cast<std::size_t>(binomial(n, k));
  require(data.values.size() == channels * data.grid->size(), ErrorCode::invalid_argument,
          "sample array size does not match channels x nodes");
  if (data.offsets.empty()) data.offsets.assign(channels, {0.0, 0.0, 0.0});
  require(data.offsets.size() == channels, ErrorCode::invalid_argument,
          "one lattice offset per channel expected");
  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->k = k;
  impl->label = std::move(label);
  impl->sampled = std::move(data);
  return DifferentialForm(std::move(impl));
}

DifferentialForm DifferentialForm::zero(int n, int k) {
  return constant(n, k, std::vector<double>(binomial(n, k), 0.0));
}

DifferentialForm DifferentialForm::constant(int n, int k, std::vector<double> coeffs) {
  require(static_cast<int>(coeffs.size()) == binomial(n, k), ErrorCode::invalid_argument,
          "constant form needs C(n,k) coefficients");
  auto eval = [coeffs](std::span<const double>, std::span<double> out) {
    std::copy(coeffs.begin(), coeffs.end(), out.begin());
  };
  auto jet = [coeffs](std::span<const double>, std::span<double> out, std::span<double> grads) {
    std::copy(coeffs.begin(), coeffs.end(), out.begin());
    std::fill(grads.begin(), grads.end(), 0.0);
  };
  std::shared_ptr<const DifferentialForm> d;
  if (k < n) d = std::make_shared<const DifferentialForm>(zero(n, k + 1));
  return analytic(n, k, eval, jet, d, "const");
}

int DifferentialForm::dim() const noexcept { return impl_->n; }
int DifferentialForm::degree() const noexcept { return impl_->k; }
const std::string& DifferentialForm::label() const noexcept { return impl_->label; }
bool DifferentialForm::is_analytic() const noexcept { return !impl_->sampled.has_value(); }
bool DifferentialForm::has_jet() const noexcept { return static_cast<bool>(impl_->jet); }

const DifferentialForm* DifferentialForm::exact_differential() const noexcept {
  return impl_->exact_d.get();
}

const SampledData& DifferentialForm::samples() const {
  require(impl_->sampled.has_value(), ErrorCode::invalid_argument, "form is not sampled");
  return *impl_->sampled;
}

DifferentialForm DifferentialForm::with_label(std::string label) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->label = std::move(label);
  return DifferentialForm(std::move(impl));
}

void DifferentialForm::jet(std::span<const double> x, std::span<double> coeffs,
                           std::span<double> grads) const {
  require(has_jet(), ErrorCode::invalid_argument, "form carries no jet");
  impl_->jet(x, coeffs, grads);
}

std::vector<double> DifferentialForm::operator()(std::span<const double> x) const {
  std::vector<double> out(channels());
  evaluate(x, out);
  return out;
}

std::vector<double> DifferentialForm::operator()(std::initializer_list<double> x) const {
  return (*this)(std::span<const double>(x.begin(), x.size()));
}

namespace {

struct Stencil {
  std::size_t index[4];
  double weight[4];
  int size;
};

Stencil axis_stencil(const geometry::Axis& axis, double x, double offset, int order) {
  const std::size_t count = axis.nodes.size();
  const double h = axis.nodes[1] - axis.nodes[0];
  const double t = (x - axis.lo) / h - offset;
  Stencil s{};
  s.size = order == 1 ? 2 : 4;
  long start = static_cast<long>(std::floor(t)) - (order == 1 ? 0 : 1);
  if (!axis.periodic) {
    const long last = static_cast<long>(count) - s.size;
    start = std::clamp(start, 0L, std::max(last, 0L));
  }
  for (int j = 0; j < s.size; ++j) {
    double w = 1.0;
    for (int m = 0; m < s.size; ++m)
      if (m != j) w *= (t - double(start + m)) / double(j - m);
    long idx = start + j;
    if (axis.periodic) idx = ((idx % long(count)) + long(count)) % long(count);
    s.index[j] = static_cast<std::size_t>(idx);
    s.weight[j] = w;
  }
  return s;
}

}  // namespace

void DifferentialForm::evaluate(std::span<const double> x, std::span<double> coeffs) const {
  require(static_cast<int>(x.size()) == impl_->n, ErrorCode::invalid_argument,
          "evaluation point has the wrong dimension");
  if (!impl_->sampled) {
    impl_->eval(x, coeffs);
    return;
  }
  const SampledData& data = *impl_->sampled;
  const geometry::Grid& grid = *data.grid;
  require(grid.tensor_uniform(), ErrorCode::unsupported,
          "interpolation needs a uniform tensor grid");
  const int n = impl_->n;
  const std::size_t nodes = grid.size();
  const auto& axes = grid.axes();
  for (int c = 0; c < channels(); ++c) {
    Stencil st[max_dim]{};
    for (int a = 0; a < n; ++a)
      st[a] = axis_stencil(axes[a], x[a], data.offsets[c][a], data.interpolation_order);
    const double* base = data.values.data() + c * nodes;
    double sum = 0.0;
    std::size_t idx[max_dim] = {0, 0, 0};
    const int s0 = st[0].size, s1 = n > 1 ? st[1].size : 1, s2 = n > 2 ? st[2].size : 1;
    for (int i = 0; i < s0; ++i)
      for (int j = 0; j < s1; ++j)
        for (int l = 0; l < s2; ++l) {
          double w = st[0].weight[i];
          idx[0] = st[0].index[i];
          if (n > 1) {
            w *= st[1].weight[j];
            idx[1] = st[1].index[j];
          }
          if (n > 2) {
            w *= st[2].weight[l];
            idx[2] = st[2].index[l];
          }
          sum += w * base[grid.flat(std::span<const std::size_t>(idx, n))];
        }
    coeffs[c] = sum;
  }
}

}  // namespace lqp::forms

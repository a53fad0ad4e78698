#include "lqp/forms/calculus.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "lqp/error.hpp"

namespace lqp::forms {

using geometry::DiagonalMetric;
using geometry::Grid;

namespace {

constexpr int max_channels = 3;

std::array<double, max_dim> metric_at(const DiagonalMetric& metric, std::span<const double> x) {
  std::array<double, max_dim> g{1.0, 1.0, 1.0};
  metric.coefficients(x, std::span<double>(g.data(), metric.dim()));
  return g;
}

// prod_{i in I} 1/g_ii
double inverse_factor(Mask m, const std::array<double, max_dim>& g) {
  double f = 1.0;
  for (int i = 0; i < max_dim; ++i)
    if (m & (Mask{1} << i)) f /= g[i];
  return f;
}

bool same_lattice(const DifferentialForm& a, const DifferentialForm& b) {
  if (!a.is_sampled() || !b.is_sampled()) return false;
  const auto& sa = a.samples();
  const auto& sb = b.samples();
  return sa.grid == sb.grid && sa.collocated() && sb.collocated();
}

// Applies a nodewise map to a collocated sampled form.
template <class F>
DifferentialForm map_nodes(const DifferentialForm& form, int out_degree, F&& f,
                           const std::string& label) {
  const SampledData& data = form.samples();
  const Grid& grid = *data.grid;
  const int n = grid.dim();
  const std::size_t nodes = grid.size();
  const int in_ch = form.channels(), out_ch = binomial(n, out_degree);
  SampledData out{data.grid, std::vector<double>(out_ch * nodes), data.interpolation_order, {}};
  std::array<double, max_channels> in{}, res{};
  for (std::size_t i = 0; i < nodes; ++i) {
    for (int c = 0; c < in_ch; ++c) in[c] = data.values[c * nodes + i];
    f(grid.point(i), std::span<const double>(in.data(), in_ch), std::span<double>(res.data(), out_ch));
    for (int c = 0; c < out_ch; ++c) out.values[c * nodes + i] = res[c];
  }
  return DifferentialForm::sampled(out_degree, std::move(out), label);
}

void d_from_gradients(int n, int k, std::span<const double> grads, std::span<double> out) {
  const auto& out_basis = basis(n, k + 1);
  for (std::size_t J = 0; J < out_basis.size(); ++J) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      const Mask bit = Mask{1} << j;
      if (!(out_basis[J] & bit)) continue;
      const int sign = (rank_below(out_basis[J], j) % 2) ? -1 : 1;
      s += sign * grads[index_of(n, out_basis[J] & ~bit) * n + j];
    }
    out[J] = s;
  }
}

// 4th-order derivative of node values along one axis.
void differentiate_axis(const Grid& grid, int axis, std::span<const double> f, std::span<double> df) {
  const auto shape = grid.shape();
  const int n = grid.dim();
  const auto& ax = grid.axes()[axis];
  const std::size_t count = ax.nodes.size();
  require(count >= 5, ErrorCode::invalid_argument, "finite differences need at least 5 nodes per axis");
  const double h = ax.nodes[1] - ax.nodes[0];
  std::size_t stride = 1;
  for (int a = n - 1; a > axis; --a) stride *= shape[a];
  const std::size_t total = grid.size();
  for (std::size_t base = 0; base < total; ++base) {
    if ((base / stride) % count != 0) continue;
    auto at = [&](long i) { return f[base + static_cast<std::size_t>(i) * stride]; };
    for (std::size_t i = 0; i < count; ++i) {
      double v;
      const long li = static_cast<long>(i), N = static_cast<long>(count);
      if (ax.periodic) {
        auto w = [&](long j) { return at(((j % N) + N) % N); };
        v = (-w(li + 2) + 8.0 * w(li + 1) - 8.0 * w(li - 1) + w(li - 2)) / (12.0 * h);
      } else if (li >= 2 && li <= N - 3) {
        v = (-at(li + 2) + 8.0 * at(li + 1) - 8.0 * at(li - 1) + at(li - 2)) / (12.0 * h);
      } else if (li == 0) {
        v = (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) / (12.0 * h);
      } else if (li == 1) {
        v = (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)) / (12.0 * h);
      } else if (li == N - 1) {
        v = (25.0 * at(N - 1) - 48.0 * at(N - 2) + 36.0 * at(N - 3) - 16.0 * at(N - 4) +
             3.0 * at(N - 5)) / (12.0 * h);
      } else {
        v = (3.0 * at(N - 1) + 10.0 * at(N - 2) - 18.0 * at(N - 3) + 6.0 * at(N - 4) - at(N - 5)) /
            (12.0 * h);
      }
      df[base + i * stride] = v;
    }
  }
}

DifferentialForm sampled_derivative(const DifferentialForm& form) {
  const SampledData& data = form.samples();
  require(data.collocated(), ErrorCode::unsupported,
          "grid differentiation needs collocated samples");
  const Grid& grid = *data.grid;
  require(grid.tensor_uniform(), ErrorCode::unsupported,
          "grid differentiation needs a uniform tensor grid");
  const int n = grid.dim(), k = form.degree();
  const std::size_t nodes = grid.size();
  const int in_ch = form.channels();
  // partial[c][j] node arrays
  std::vector<double> partial(static_cast<std::size_t>(in_ch) * n * nodes);
  for (int c = 0; c < in_ch; ++c)
    for (int j = 0; j < n; ++j)
      differentiate_axis(grid, j, std::span<const double>(data.values.data() + c * nodes, nodes),
                         std::span<double>(partial.data() + (c * n + j) * nodes, nodes));
  const int out_ch = binomial(n, k + 1);
  SampledData out{data.grid, std::vector<double>(out_ch * nodes), data.interpolation_order, {}};
  std::vector<double> grads(in_ch * n);
  std::array<double, max_channels> res{};
  for (std::size_t i = 0; i < nodes; ++i) {
    for (int c = 0; c < in_ch; ++c)
      for (int j = 0; j < n; ++j) grads[c * n + j] = partial[(c * n + j) * nodes + i];
    d_from_gradients(n, k, grads, std::span<double>(res.data(), out_ch));
    for (int c = 0; c < out_ch; ++c) out.values[c * nodes + i] = res[c];
  }
  return DifferentialForm::sampled(k + 1, std::move(out), "d(" + form.label() + ")");
}

}  // namespace

DifferentialForm exterior_derivative(const DifferentialForm& form, const DerivativeOptions& options) {
  const int n = form.dim(), k = form.degree();
  require(k < n, ErrorCode::degree_mismatch, "exterior derivative of a top-degree form");
  if (form.exact_differential()) return *form.exact_differential();
  if (form.is_sampled()) return sampled_derivative(form);

  const std::string label = "d(" + form.label() + ")";
  const int in_ch = form.channels();
  if (form.has_jet()) {
    auto eval = [form, n, k, in_ch](std::span<const double> x, std::span<double> out) {
      std::array<double, max_channels> c{};
      std::array<double, max_channels * max_dim> g{};
      form.jet(x, std::span<double>(c.data(), in_ch), std::span<double>(g.data(), in_ch * n));
      d_from_gradients(n, k, std::span<const double>(g.data(), in_ch * n), out);
    };
    return DifferentialForm::analytic(n, k + 1, eval, {}, {}, label);
  }
  const double h = options.step;
  require(h > 0.0, ErrorCode::invalid_argument, "difference step must be positive");
  auto eval = [form, n, k, in_ch, h](std::span<const double> x, std::span<double> out) {
    std::array<double, max_dim> y{};
    std::array<double, max_channels> c[4];
    std::array<double, max_channels * max_dim> g{};
    const double offsets[4] = {2.0, 1.0, -1.0, -2.0};
    for (int j = 0; j < n; ++j) {
      for (int s = 0; s < 4; ++s) {
        std::copy(x.begin(), x.end(), y.begin());
        y[j] += offsets[s] * h;
        form.evaluate(std::span<const double>(y.data(), n), std::span<double>(c[s].data(), in_ch));
      }
      for (int ch = 0; ch < in_ch; ++ch)
        g[ch * n + j] = (-c[0][ch] + 8.0 * c[1][ch] - 8.0 * c[2][ch] + c[3][ch]) / (12.0 * h);
    }
    d_from_gradients(n, k, std::span<const double>(g.data(), in_ch * n), out);
  };
  return DifferentialForm::analytic(n, k + 1, eval, {}, {}, label);
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  require(a.dim() == b.dim(), ErrorCode::degree_mismatch, "wedge of forms on different dimensions");
  const int n = a.dim(), ka = a.degree(), kb = b.degree();
  require(ka + kb <= n, ErrorCode::degree_mismatch, "wedge degree exceeds dimension");
  const int ca = a.channels(), cb = b.channels(), cout = binomial(n, ka + kb);
  auto combine = [n, ka, kb, ca, cb](std::span<const double> va, std::span<const double> vb,
                                     std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const auto& ba = basis(n, ka);
    const auto& bb = basis(n, kb);
    for (int i = 0; i < ca; ++i)
      for (int j = 0; j < cb; ++j) {
        const int s = wedge_sign(ba[i], bb[j]);
        if (s == 0) continue;
        out[index_of(n, ba[i] | bb[j])] += s * va[i] * vb[j];
      }
  };
  const std::string label = a.label() + "^" + b.label();
  if (same_lattice(a, b)) {
    const auto& sb = b.samples();
    const std::size_t nodes = sb.grid->size();
    std::size_t node = 0;
    return map_nodes(
        a, ka + kb,
        [&](std::span<const double>, std::span<const double> va, std::span<double> out) {
          std::array<double, max_channels> vb{};
          for (int j = 0; j < cb; ++j) vb[j] = sb.values[j * nodes + node];
          combine(va, std::span<const double>(vb.data(), cb), out);
          ++node;
        },
        label);
  }
  auto eval = [a, b, ca, cb, combine](std::span<const double> x, std::span<double> out) {
    std::array<double, max_channels> va{}, vb{};
    a.evaluate(x, std::span<double>(va.data(), ca));
    b.evaluate(x, std::span<double>(vb.data(), cb));
    combine(std::span<const double>(va.data(), ca), std::span<const double>(vb.data(), cb), out);
  };
  DifferentialForm::Jet jet;
  if (a.has_jet() && b.has_jet()) {
    jet = [a, b, n, ca, cb, cout, combine](std::span<const double> x, std::span<double> out,
                                           std::span<double> grads) {
      std::array<double, max_channels> va{}, vb{}, tmp{};
      std::array<double, max_channels * max_dim> ga{}, gb{};
      a.jet(x, std::span<double>(va.data(), ca), std::span<double>(ga.data(), ca * n));
      b.jet(x, std::span<double>(vb.data(), cb), std::span<double>(gb.data(), cb * n));
      combine(std::span<const double>(va.data(), ca), std::span<const double>(vb.data(), cb), out);
      for (int j = 0; j < n; ++j) {
        std::array<double, max_channels> da{}, db{};
        for (int i = 0; i < ca; ++i) da[i] = ga[i * n + j];
        for (int i = 0; i < cb; ++i) db[i] = gb[i * n + j];
        std::array<double, max_channels> r1{}, r2{};
        combine(std::span<const double>(da.data(), ca), std::span<const double>(vb.data(), cb),
                std::span<double>(r1.data(), cout));
        combine(std::span<const double>(va.data(), ca), std::span<const double>(db.data(), cb),
                std::span<double>(r2.data(), cout));
        for (int c = 0; c < cout; ++c) grads[c * n + j] = r1[c] + r2[c];
      }
      (void)tmp;
    };
  }
  return DifferentialForm::analytic(n, ka + kb, eval, jet, {}, label);
}

DifferentialForm hodge_star(const DifferentialForm& form, const DiagonalMetric& metric) {
  const int n = form.dim(), k = form.degree();
  require(metric.dim() == n, ErrorCode::invalid_argument, "metric dimension differs from form");
  const int in_ch = form.channels();
  // *dx^I = sign(I, I^c) sqrt(det g) prod_{i in I} g^ii dx^{I^c}
  auto apply = [n, k, in_ch, metric](std::span<const double> x, std::span<const double> in,
                                     std::span<double> out) {
    const auto g = metric_at(metric, x);
    double det = 1.0;
    for (int i = 0; i < n; ++i) det *= g[i];
    const double vol = std::sqrt(det);
    const auto& b = basis(n, k);
    const Mask full = full_mask(n);
    for (int i = 0; i < in_ch; ++i) {
      const Mask comp = full & ~b[i];
      out[index_of(n, comp)] = wedge_sign(b[i], comp) * vol * inverse_factor(b[i], g) * in[i];
    }
  };
  const std::string label = "*" + form.label();
  if (form.is_sampled() && form.samples().collocated())
    return map_nodes(form, n - k, apply, label);
  auto eval = [form, in_ch, apply](std::span<const double> x, std::span<double> out) {
    std::array<double, max_channels> c{};
    form.evaluate(x, std::span<double>(c.data(), in_ch));
    apply(x, std::span<const double>(c.data(), in_ch), out);
  };
  return DifferentialForm::analytic(n, n - k, eval, {}, {}, label);
}

DifferentialForm codifferential(const DifferentialForm& form, const DiagonalMetric& metric,
                                const DerivativeOptions& options) {
  const int n = form.dim(), k = form.degree();
  require(k >= 1, ErrorCode::degree_mismatch, "codifferential of a 0-form");
  const int sign = ((n * k + n + 1) % 2) ? -1 : 1;
  return scale(sign, hodge_star(exterior_derivative(hodge_star(form, metric), options), metric))
      .with_label("delta(" + form.label() + ")");
}

DifferentialForm interior_product(
    const DifferentialForm& form,
    std::function<void(std::span<const double> x, std::span<double> v)> field) {
  const int n = form.dim(), k = form.degree();
  require(k >= 1, ErrorCode::degree_mismatch, "interior product of a 0-form");
  const int in_ch = form.channels();
  auto eval = [form, field, n, k, in_ch](std::span<const double> x, std::span<double> out) {
    std::array<double, max_channels> c{};
    std::array<double, max_dim> v{};
    form.evaluate(x, std::span<double>(c.data(), in_ch));
    field(x, std::span<double>(v.data(), n));
    const auto& ob = basis(n, k - 1);
    for (std::size_t J = 0; J < ob.size(); ++J) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        const Mask bit = Mask{1} << j;
        if (ob[J] & bit) continue;
        const Mask I = ob[J] | bit;
        const int sign = (rank_below(I, j) % 2) ? -1 : 1;
        s += sign * v[j] * c[index_of(n, I)];
      }
      out[J] = s;
    }
  };
  return DifferentialForm::analytic(n, k - 1, eval, {}, {}, "i(" + form.label() + ")");
}

DifferentialForm linear_combination(double a, const DifferentialForm& fa, double b,
                                    const DifferentialForm& fb) {
  require(fa.dim() == fb.dim() && fa.degree() == fb.degree(), ErrorCode::degree_mismatch,
          "linear combination of forms of different degree");
  const int n = fa.dim(), k = fa.degree(), ch = fa.channels();
  if (fa.is_sampled() && fb.is_sampled()) {
    const auto& sa = fa.samples();
    const auto& sb = fb.samples();
    if (sa.grid == sb.grid && sa.offsets == sb.offsets) {
      SampledData out = sa;
      for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = a * sa.values[i] + b * sb.values[i];
      return DifferentialForm::sampled(k, std::move(out));
    }
  }
  auto eval = [fa, fb, a, b, ch](std::span<const double> x, std::span<double> out) {
    std::array<double, max_channels> va{}, vb{};
    fa.evaluate(x, std::span<double>(va.data(), ch));
    fb.evaluate(x, std::span<double>(vb.data(), ch));
    for (int c = 0; c < ch; ++c) out[c] = a * va[c] + b * vb[c];
  };
  DifferentialForm::Jet jet;
  if (fa.has_jet() && fb.has_jet()) {
    jet = [fa, fb, a, b, ch, n](std::span<const double> x, std::span<double> out,
                                std::span<double> grads) {
      std::array<double, max_channels> va{}, vb{};
      std::array<double, max_channels * max_dim> ga{}, gb{};
      fa.jet(x, std::span<double>(va.data(), ch), std::span<double>(ga.data(), ch * n));
      fb.jet(x, std::span<double>(vb.data(), ch), std::span<double>(gb.data(), ch * n));
      for (int c = 0; c < ch; ++c) out[c] = a * va[c] + b * vb[c];
      for (int i = 0; i < ch * n; ++i) grads[i] = a * ga[i] + b * gb[i];
    };
  }
  std::shared_ptr<const DifferentialForm> d;
  if (k < n && fa.exact_differential() && fb.exact_differential())
    d = std::make_shared<const DifferentialForm>(
        linear_combination(a, *fa.exact_differential(), b, *fb.exact_differential()));
  return DifferentialForm::analytic(n, k, eval, jet, d);
}

DifferentialForm scale(double a, const DifferentialForm& form) {
  return linear_combination(a, form, 0.0, form).with_label(form.label());
}

DifferentialForm multiply(std::function<double(std::span<const double>)> f,
                          const DifferentialForm& form) {
  const int ch = form.channels();
  auto eval = [f, form, ch](std::span<const double> x, std::span<double> out) {
    form.evaluate(x, out.subspan(0, ch));
    const double s = f(x);
    for (int c = 0; c < ch; ++c) out[c] *= s;
  };
  return DifferentialForm::analytic(form.dim(), form.degree(), eval, {}, {}, "f*" + form.label());
}

std::vector<double> node_values(const DifferentialForm& form, const Grid& grid) {
  require(form.dim() == grid.dim(), ErrorCode::invalid_argument, "form and grid dimensions differ");
  if (form.is_sampled()) {
    const auto& s = form.samples();
    if (s.grid.get() == &grid && s.collocated()) return s.values;
  }
  const std::size_t nodes = grid.size();
  const int ch = form.channels();
  std::vector<double> values(ch * nodes);
  std::array<double, max_channels> c{};
  for (std::size_t i = 0; i < nodes; ++i) {
    form.evaluate(grid.point(i), std::span<double>(c.data(), ch));
    for (int j = 0; j < ch; ++j) values[j * nodes + i] = c[j];
  }
  return values;
}

DifferentialForm sample(const DifferentialForm& form, std::shared_ptr<const Grid> grid,
                        int interpolation_order) {
  SampledData data{grid, node_values(form, *grid), interpolation_order, {}};
  return DifferentialForm::sampled(form.degree(), std::move(data), form.label());
}

DifferentialForm pullback(const DifferentialForm& form, ChartMap map) {
  const int n = form.dim(), k = form.degree();
  require(map.dim == n && static_cast<bool>(map.apply), ErrorCode::invalid_argument,
          "pullback map must act on the form's dimension");
  const int ch = form.channels();
  auto eval = [form, map, n, k, ch](std::span<const double> x, std::span<double> out) {
    std::array<double, max_dim> fx{};
    std::array<double, max_dim * max_dim> jac{};
    map.apply(x, std::span<double>(fx.data(), n), std::span<double>(jac.data(), n * n));
    double det;
    if (n == 1) det = jac[0];
    else if (n == 2) det = jac[0] * jac[3] - jac[1] * jac[2];
    else
      det = jac[0] * (jac[4] * jac[8] - jac[5] * jac[7]) - jac[1] * (jac[3] * jac[8] - jac[5] * jac[6]) +
            jac[2] * (jac[3] * jac[7] - jac[4] * jac[6]);
    require(std::abs(det) >= 1e-14, ErrorCode::singular_jacobian,
            "pullback map has a singular Jacobian");
    std::array<double, max_channels> c{};
    form.evaluate(std::span<const double>(fx.data(), n), std::span<double>(c.data(), ch));
    const auto& b = basis(n, k);
    // out_I = sum_J c_J det(DF[J, I])
    for (int I = 0; I < ch; ++I) {
      double s = 0.0;
      for (int J = 0; J < ch; ++J) {
        int rows[max_dim], cols[max_dim], m = 0, r = 0;
        for (int i = 0; i < n; ++i) {
          if (b[J] & (Mask{1} << i)) rows[r++] = i;
          if (b[I] & (Mask{1} << i)) cols[m++] = i;
        }
        auto e = [&](int a, int bb) { return jac[rows[a] * n + cols[bb]]; };
        double minor = 1.0;
        if (k == 1) minor = e(0, 0);
        else if (k == 2) minor = e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
        else if (k == 3)
          minor = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
                  e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
                  e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
        s += c[J] * minor;
      }
      out[I] = s;
    }
  };
  return DifferentialForm::analytic(n, k, eval, {}, {}, "F*" + form.label());
}

double pointwise_inner(const DifferentialForm& a, const DifferentialForm& b,
                       const DiagonalMetric& metric, std::span<const double> x) {
  require(a.degree() == b.degree() && a.dim() == b.dim(), ErrorCode::degree_mismatch,
          "inner product of forms of different degree");
  const int ch = a.channels();
  std::array<double, max_channels> va{}, vb{};
  a.evaluate(x, std::span<double>(va.data(), ch));
  b.evaluate(x, std::span<double>(vb.data(), ch));
  const auto g = metric_at(metric, x);
  const auto& bs = basis(a.dim(), a.degree());
  double s = 0.0;
  for (int c = 0; c < ch; ++c) s += va[c] * vb[c] * inverse_factor(bs[c], g);
  return s;
}

double pointwise_norm(const DifferentialForm& form, const DiagonalMetric& metric,
                      std::span<const double> x) {
  return std::sqrt(std::max(0.0, pointwise_inner(form, form, metric, x)));
}

FormNormReport lp_norm(const DifferentialForm& form, const DiagonalMetric& metric, const Grid& grid,
                       double p, const TailBound& tail) {
  require(p >= 1.0, ErrorCode::invalid_argument, "norm exponent must be >= 1");
  require(metric.dim() == form.dim(), ErrorCode::invalid_argument, "metric dimension differs from form");
  const std::size_t nodes = grid.size();
  const int ch = form.channels();
  const auto values = node_values(form, grid);
  const auto& bs = basis(form.dim(), form.degree());
  FormNormReport report;
  report.p = p;
  report.resolution = nodes;
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const auto x = grid.point(i);
    const auto g = metric_at(metric, x);
    double sq = 0.0;
    for (int c = 0; c < ch; ++c) sq += values[c * nodes + i] * values[c * nodes + i] * inverse_factor(bs[c], g);
    const double mag = std::sqrt(sq);
    if (std::isinf(p)) {
      acc = std::max(acc, mag);
    } else {
      double det = 1.0;
      for (int a = 0; a < form.dim(); ++a) det *= g[a];
      acc += grid.weight(i) * std::sqrt(det) * std::pow(mag, p);
    }
  }
  if (std::isinf(p)) {
    report.value = acc;
    return report;
  }
  if (tail) {
    report.tail_correction = tail(p);
    require(report.tail_correction >= 0.0, ErrorCode::invalid_argument, "tail bound must be >= 0");
  }
  report.value = std::pow(acc + report.tail_correction, 1.0 / p);
  return report;
}

double pairing_integral(const DifferentialForm& a, const DifferentialForm& b, const Grid& grid) {
  require(a.dim() == b.dim() && a.degree() + b.degree() == a.dim(), ErrorCode::degree_mismatch,
          "pairing needs complementary degrees");
  const std::size_t nodes = grid.size();
  const auto va = node_values(a, grid);
  const auto vb = node_values(b, grid);
  const int n = a.dim();
  const auto& ba = basis(n, a.degree());
  const auto& bb = basis(n, b.degree());
  double total = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    double top = 0.0;
    for (std::size_t I = 0; I < ba.size(); ++I)
      for (std::size_t J = 0; J < bb.size(); ++J) {
        const int s = wedge_sign(ba[I], bb[J]);
        if (s) top += s * va[I * nodes + i] * vb[J * nodes + i];
      }
    total += grid.weight(i) * top;
  }
  return total;
}

double inner_product_integral(const DifferentialForm& a, const DifferentialForm& b,
                              const DiagonalMetric& metric, const Grid& grid) {
  require(a.degree() == b.degree() && a.dim() == b.dim(), ErrorCode::degree_mismatch,
          "inner product of forms of different degree");
  const std::size_t nodes = grid.size();
  const auto va = node_values(a, grid);
  const auto vb = node_values(b, grid);
  const auto& bs = basis(a.dim(), a.degree());
  double total = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const auto x = grid.point(i);
    const auto g = metric_at(metric, x);
    double s = 0.0, det = 1.0;
    for (std::size_t c = 0; c < bs.size(); ++c) s += va[c * nodes + i] * vb[c * nodes + i] * inverse_factor(bs[c], g);
    for (int d = 0; d < a.dim(); ++d) det *= g[d];
    total += grid.weight(i) * std::sqrt(det) * s;
  }
  return total;
}

double max_difference(const DifferentialForm& a, const DifferentialForm& b, const Grid& grid) {
  require(a.degree() == b.degree(), ErrorCode::degree_mismatch, "forms of different degree");
  const auto va = node_values(a, grid);
  const auto vb = node_values(b, grid);
  double m = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - vb[i]));
  return m;
}

}  // namespace lqp::forms

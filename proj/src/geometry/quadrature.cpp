#include "lqp/geometry/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "lqp/error.hpp"

namespace lqp::geometry {

namespace {

// Legendre polynomial P_n(x) and its derivative.
std::pair<double, double> legendre(int order, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= order; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  return {p1, order * (x * p1 - p0) / (x * x - 1.0)};
}

Rule1d compute_gauss_legendre(int order) {
  Rule1d rule;
  if (order == 1) {
    rule.nodes = {0.0};
    rule.weights = {2.0};
    return rule;
  }
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(order, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(order, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

}  // namespace

const Rule1d& gauss_legendre(int order) {
  require(order >= 1 && order <= 512, ErrorCode::invalid_argument,
          "Gauss-Legendre order must lie in [1, 512]");
  static std::mutex mutex;
  static std::map<int, Rule1d> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
  return it->second;
}

Rule1d gauss_legendre(int order, double lo, double hi) {
  Rule1d rule = gauss_legendre(order);
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

double integrate(const std::function<double(double)>& f,
                 std::span<const double> breaks, int panels, int order) {
  require(breaks.size() >= 2, ErrorCode::invalid_argument,
          "integrate needs at least two breakpoints");
  const Rule1d& rule = gauss_legendre(order);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double width = (breaks[s + 1] - breaks[s]) / panels;
    for (int p = 0; p < panels; ++p) {
      const double lo = breaks[s] + p * width;
      const double mid = lo + 0.5 * width;
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
      total += 0.5 * width * sum;
    }
  }
  return total;
}

}  // namespace lqp::geometry

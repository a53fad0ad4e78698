#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lqp::geometry {

struct Rule1d {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `order` nodes on [-1, 1].
const Rule1d& gauss_legendre(int order);

/// Gauss-Legendre rule mapped to [lo, hi].
Rule1d gauss_legendre(int order, double lo, double hi);

/// Composite Gauss-Legendre integral over consecutive segments given by
/// `breaks`, each split into `panels` equal panels.
double integrate(const std::function<double(double)>& f,
                 std::span<const double> breaks, int panels = 8,
                 int order = 16);

}  // namespace lqp::geometry

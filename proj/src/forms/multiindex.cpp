#include "lqp/forms/multiindex.hpp"

#include <algorithm>
#include <array>
#include <mutex>

#include "lqp/error.hpp"

namespace lqp::forms {

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

const std::vector<Mask>& basis(int n, int k) {
  require(n >= 1 && n <= max_dim && k >= 0 && k <= n, ErrorCode::invalid_argument,
          "multi-index degree out of range");
  static const auto table = [] {
    std::array<std::array<std::vector<Mask>, max_dim + 1>, max_dim + 1> t;
    for (int dim = 1; dim <= max_dim; ++dim) {
      std::vector<std::vector<int>> lists;
      for (Mask m = 0; m <= full_mask(dim); ++m) {
        std::vector<int> idx;
        for (int b = 0; b < dim; ++b)
          if (m & (Mask{1} << b)) idx.push_back(b);
        lists.push_back(idx);
      }
      std::sort(lists.begin(), lists.end());
      for (const auto& l : lists) {
        Mask m = 0;
        for (int b : l) m |= Mask{1} << b;
        t[dim][l.size()].push_back(m);
      }
    }
    return t;
  }();
  return table[n][k];
}

int index_of(int n, Mask m) {
  const auto& b = basis(n, degree_of(m));
  const auto it = std::find(b.begin(), b.end(), m);
  require(it != b.end(), ErrorCode::invalid_argument, "multi-index outside dimension");
  return static_cast<int>(it - b.begin());
}

int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  // Count inversions: pairs (i in a, j in b) with j < i.
  int inversions = 0;
  for (Mask rest = a; rest; rest &= rest - 1) {
    const int i = std::countr_zero(rest);
    inversions += rank_below(b, i);
  }
  return (inversions % 2) ? -1 : 1;
}

std::string label(Mask m) {
  if (m == 0) return "1";
  std::string s;
  for (int b = 0; b < 32; ++b) {
    if (!(m & (Mask{1} << b))) continue;
    if (!s.empty()) s += "^";
    s += "dx" + std::to_string(b + 1);
  }
  return s;
}

}  // namespace lqp::forms

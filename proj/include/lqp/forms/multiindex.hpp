#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace lqp::forms {

/// Strictly increasing multi-index i_1 < ... < i_k stored as a bit set.
using Mask = std::uint32_t;

inline constexpr int max_dim = 3;

inline int degree_of(Mask m) { return std::popcount(m); }

int binomial(int n, int k);

/// Basis multi-indices of degree k in dimension n, lexicographic order.
const std::vector<Mask>& basis(int n, int k);

/// Position of `m` in basis(n, degree_of(m)).
int index_of(int n, Mask m);

/// Sign of dx^a ^ dx^b relative to dx^(a|b); zero when a and b overlap.
int wedge_sign(Mask a, Mask b);

/// Number of elements of `m` strictly below `bit`.
inline int rank_below(Mask m, int bit) { return std::popcount(m & ((Mask{1} << bit) - 1)); }

inline Mask full_mask(int n) { return (Mask{1} << n) - 1; }

/// "dx1^dx2" style label, 1-based.
std::string label(Mask m);

}  // namespace lqp::forms

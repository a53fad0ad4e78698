#pragma once

// Forward-mode dual numbers with up to three tangent directions. Nesting
// Dual<Dual<double>> gives second derivatives. Used to attach exact jets and
// exact differentials to analytic forms written as generic lambdas.

#include <array>
#include <cmath>

namespace lqp::forms {

template <class T>
struct Dual {
  T v{};
  std::array<T, 3> d{};

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit lift of constants
  Dual(T value, std::array<T, 3> tangent) : v(value), d(tangent) {}

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }
};

template <class T>
Dual<T> chain(const Dual<T>& x, const T& value, const T& slope) {
  Dual<T> r;
  r.v = value;
  for (int i = 0; i < 3; ++i) r.d[i] = slope * x.d[i];
  return r;
}

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
  Dual<T> r;
  r.v = a.v + b.v;
  for (int i = 0; i < 3; ++i) r.d[i] = a.d[i] + b.d[i];
  return r;
}
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
  Dual<T> r;
  r.v = a.v - b.v;
  for (int i = 0; i < 3; ++i) r.d[i] = a.d[i] - b.d[i];
  return r;
}
template <class T>
Dual<T> operator-(const Dual<T>& a) {
  Dual<T> r;
  r.v = -a.v;
  for (int i = 0; i < 3; ++i) r.d[i] = -a.d[i];
  return r;
}
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  Dual<T> r;
  r.v = a.v * b.v;
  for (int i = 0; i < 3; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return r;
}
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  Dual<T> r;
  r.v = a.v / b.v;
  for (int i = 0; i < 3; ++i) r.d[i] = (a.d[i] * b.v - a.v * b.d[i]) / (b.v * b.v);
  return r;
}

#define LQP_DUAL_SCALAR_OPS(op)                                                 \
  template <class T>                                                           \
  Dual<T> operator op(const Dual<T>& a, double b) { return a op Dual<T>(b); }  \
  template <class T>                                                           \
  Dual<T> operator op(double a, const Dual<T>& b) { return Dual<T>(a) op b; }
LQP_DUAL_SCALAR_OPS(+)
LQP_DUAL_SCALAR_OPS(-)
LQP_DUAL_SCALAR_OPS(*)
LQP_DUAL_SCALAR_OPS(/)
#undef LQP_DUAL_SCALAR_OPS

template <class T>
bool operator<(const Dual<T>& a, double b) { return a.v < b; }
template <class T>
bool operator>(const Dual<T>& a, double b) { return a.v > b; }
template <class T>
bool operator<=(const Dual<T>& a, double b) { return a.v <= b; }
template <class T>
bool operator>=(const Dual<T>& a, double b) { return a.v >= b; }

template <class T>
Dual<T> sin(const Dual<T>& x) { using std::sin, std::cos; return chain(x, sin(x.v), cos(x.v)); }
template <class T>
Dual<T> cos(const Dual<T>& x) { using std::sin, std::cos; return chain(x, cos(x.v), T(-sin(x.v))); }
template <class T>
Dual<T> exp(const Dual<T>& x) { using std::exp; const T e = exp(x.v); return chain(x, e, e); }
template <class T>
Dual<T> log(const Dual<T>& x) { using std::log; return chain(x, log(x.v), T(1.0 / x.v)); }
template <class T>
Dual<T> sqrt(const Dual<T>& x) { using std::sqrt; const T s = sqrt(x.v); return chain(x, s, T(0.5 / s)); }
template <class T>
Dual<T> pow(const Dual<T>& x, double a) {
  using std::pow;
  return chain(x, pow(x.v, a), T(a * pow(x.v, a - 1.0)));
}

/// Underlying double value for double and (nested) dual scalars.
inline double value(double x) { return x; }
template <class T>
double value(const Dual<T>& x) { return value(x.v); }

}  // namespace lqp::forms

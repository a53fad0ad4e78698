#include <cmath>

#include "lqp/error.hpp"
#include "lqp/experiments/experiments.hpp"
#include "lqp/forms/autodiff.hpp"

namespace lqp::experiments {

using forms::make_form;

std::vector<CatalogForm> test_form_catalog(int n) {
  require(n == 2 || n == 3, ErrorCode::unsupported, "the form catalog covers n = 2 and n = 3");
  std::vector<CatalogForm> out;
  if (n == 2) {
    out.push_back({"poly-1", make_form(2, 1, [](const auto* x, auto* c) {
      c[0] = x[0] * x[1] * x[1] + 3.0 * x[1];
      c[1] = x[0] * x[0] * x[0] - x[1];
    }, "poly-1"), false});
    out.push_back({"trig-1", make_form(2, 1, [](const auto* x, auto* c) {
      using std::sin, std::cos;
      c[0] = sin(2.0 * x[0] + x[1]);
      c[1] = cos(x[0] * x[1]);
    }, "trig-1"), false});
    out.push_back({"mixed-1", make_form(2, 1, [](const auto* x, auto* c) {
      using std::sin, std::cos;
      c[0] = x[0] * cos(x[1]);
      c[1] = sin(x[0]) * x[1] * x[1];
    }, "mixed-1"), false});
    out.push_back({"exact-1", make_form(2, 1, [](const auto* x, auto* c) {
      using std::sin, std::cos;
      c[0] = cos(x[0]) * x[1] * x[1];
      c[1] = 2.0 * sin(x[0]) * x[1];
    }, "exact-1"), true});
    out.push_back({"poly-2", make_form(2, 2, [](const auto* x, auto* c) {
      c[0] = x[0] * x[0] * x[1] + 1.0;
    }, "poly-2"), true});
    out.push_back({"trig-2", make_form(2, 2, [](const auto* x, auto* c) {
      using std::cos;
      c[0] = cos(x[0] - 2.0 * x[1]);
    }, "trig-2"), true});
    return out;
  }
  out.push_back({"poly-1", make_form(3, 1, [](const auto* x, auto* c) {
    c[0] = x[1] * x[2];
    c[1] = x[0] * x[0];
    c[2] = x[0] * x[1] * x[2];
  }, "poly-1"), false});
  out.push_back({"trig-1", make_form(3, 1, [](const auto* x, auto* c) {
    using std::sin, std::cos;
    c[0] = sin(x[1]);
    c[1] = cos(x[2]);
    c[2] = sin(x[0] + x[2]);
  }, "trig-1"), false});
  out.push_back({"poly-2", make_form(3, 2, [](const auto* x, auto* c) {
    c[0] = x[2] * x[2];
    c[1] = x[0] * x[1];
    c[2] = x[0] + x[1];
  }, "poly-2"), false});
  out.push_back({"trig-2", make_form(3, 2, [](const auto* x, auto* c) {
    using std::sin, std::cos;
    c[0] = cos(x[1]);
    c[1] = sin(x[0] * x[2]);
    c[2] = cos(x[0] - x[1]);
  }, "trig-2"), false});
  out.push_back({"poly-3", make_form(3, 3, [](const auto* x, auto* c) {
    c[0] = x[0] * x[1] + x[2];
  }, "poly-3"), true});
  out.push_back({"trig-3", make_form(3, 3, [](const auto* x, auto* c) {
    using std::sin, std::cos;
    c[0] = sin(x[0]) * cos(x[1] * x[2]);
  }, "trig-3"), true});
  return out;
}

}  // namespace lqp::experiments

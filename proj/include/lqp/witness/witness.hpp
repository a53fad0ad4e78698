#pragma once

// Explicit witnesses: plateau and Gaussian bounds on the line, reduced
// approximation on the line, the hyperbolic-plane pair (f, g) and the ball
// family (alpha, gamma_t).

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lqp/forms/calculus.hpp"

namespace lqp::witness {

struct WitnessReport {
  std::string name;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, std::vector<double>>> ladders;
  std::string verdict;
  std::vector<std::string> notes;
  /// Every internal check of the construction held.
  bool passed = true;

  double value(const std::string& key) const;
  const std::vector<double>& ladder(const std::string& key) const;
};

/// C^infinity step, 0 for x <= 0 and 1 for x >= 1, with max slope 2 at 1/2.
template <class T>
T smooth_step(const T& x) {
  using std::exp;
  if (x <= 0.0) return 0.0 * x;
  if (x >= 1.0) return 0.0 * x + 1.0;
  const T a = exp(-1.0 / x), b = exp(-1.0 / (1.0 - x));
  return a / (a + b);
}
double smooth_step_slope(double x);

// ---- line ---------------------------------------------------------------

/// f_a = 1 on [1, a], 0 off [0, a+1]; ratio ||f_a||_q / ||f_a'||_p against
/// the closed-form bound 2^{-1-1/p} (a-1)^{1/q}. q = inf gives a note only.
WitnessReport line_plateau_bound(double a, double p, double q);

/// g = exp(-pi kappa x^2), f = int g: sup-gap inf_z ||f - z||_inf and ||g||_p
/// by quadrature, checked against 1/(2 sqrt kappa) and (kappa p)^{-1/(2p)}.
WitnessReport line_gaussian_bound(double kappa, double p);

/// Least-squares exponent of log(gap/||g||_p) against log kappa on a ladder.
WitnessReport line_gaussian_ladder(const std::vector<double>& kappas, double p);

/// An integrable 1-form w(x) dx on the line with its L^p tail
/// tail(R, p) = int_{|x| > R} |w|^p.
struct LineForm {
  std::function<double(double)> coefficient;
  std::function<double(double, double)> tail;
  std::string label;

  static LineForm gaussian();
  /// (1 - x^2)^2 on [-1, 1].
  static LineForm compact_bump();
  static LineForm zero();
};

/// b_m with db_m = chi_[-m,m] w - lambda_m, lambda_m a bump on [m, m+L] with
/// the same integral and ||lambda_m||_p = 1/(2m). Reports ||db_m - w||_p.
WitnessReport line_reduced_approx(const LineForm& omega, double m, double p);

// ---- hyperbolic plane ---------------------------------------------------

struct HyperbolicPair {
  forms::DifferentialForm f, g;
  double normalization = 1.0;
  WitnessReport report;
};

struct HyperbolicOptions {
  /// z truncation for the norm quadrature; the tail beyond it is analytic.
  double z_max = 4.0;
  int nodes_per_unit = 64;
  double y_shift = 0.0;
};

/// f = c h1(y) k(z), g = h2(y - shift) k(z) with c normalizing int df ^ dg = 1.
/// The report checks the eight properties of the pair.
HyperbolicPair hyperbolic_witnesses(const HyperbolicOptions& options = {});

/// Nonvanishing certificate for reduced L_{q,p} cohomology in degree 1.
WitnessReport hyperbolic_nonvanishing(double p, double q, const HyperbolicOptions& options = {});

/// ||dF||_{L^r} of one witness: truncated quadrature, analytic tail, total.
struct TailNorm {
  double truncated = 0.0;
  double tail = 0.0;
  double value = 0.0;
};
TailNorm hyperbolic_differential_norm(const HyperbolicPair& pair, bool use_g, double r,
                                      const HyperbolicOptions& options = {});

// ---- ball ---------------------------------------------------------------

struct BallWitnessConfig {
  int n = 2;
  int k = 1;
  double p = 4.0 / 3.0;
  double q = 8.0;
  /// Defaults to the midpoint of the admissible interval.
  std::optional<double> mu;
  std::vector<double> t_ladder{1e-2, 1e-3, 1e-4};
  /// Relative width of the h_t transitions: [2t - tau t, 2t] and [1-2t, 1-2t + tau t].
  double tau = 1e-3;
  int radial_cells = 32;
  int angular_nodes = 64;
};

/// Open interval (k - n/p, k - 1 - n/q); throws empty_mu_interval when empty.
std::pair<double, double> mu_interval(int n, int k, double p, double q);

/// Radial profile h_t.
double ball_profile(double t, double tau, double r);

/// alpha = d(r^mu theta) with theta = sin(psi) (n = 2).
forms::DifferentialForm ball_alpha(double mu);
/// gamma_t = h_t(r) r^{-(mu+1)} phi dr with phi = cos(psi)/pi.
forms::DifferentialForm ball_gamma(double mu, double t, double tau);

WitnessReport ball_witness(const BallWitnessConfig& config);

}  // namespace lqp::witness

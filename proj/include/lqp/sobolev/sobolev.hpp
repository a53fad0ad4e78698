#pragma once

// Desk-scale Sobolev-type constants on the circle and torus, solvability of
// d eta = omega with norm control, and the finite-volume L^q monotonicity.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lqp/forms/form.hpp"
#include "lqp/geometry/geometry.hpp"
#include "lqp/homotopy/homotopy.hpp"

namespace lqp::sobolev {

/// Trigonometric test family: cos(m.x) dx^I and sin(m.x) dx^I for every
/// channel I and every nonzero frequency vector with max |m_i| <= max_frequency.
/// `extra` members are appended verbatim.
struct FamilySpec {
  int max_frequency = 3;
  std::vector<forms::DifferentialForm> extra;
};

std::vector<forms::DifferentialForm> trig_family(int n, int k, int max_frequency);

struct MemberRatio {
  std::string label;
  double ratio = 0.0;
};

struct SobolevEstimate {
  std::string domain;
  int degree = 0;
  double p = 2.0, q = 2.0;
  int resolution = 0;
  geometry::SobolevVerdict exponents = geometry::SobolevVerdict::strict;
  /// max over the family of inf_zeta ||theta - zeta||_q / ||d theta||_p.
  double lower_bound = 0.0;
  std::string best_member;
  /// 1 / sqrt(lambda_1) of the discrete Laplacian; p = q = 2 only.
  std::optional<double> exact;
  double solvability_constant = 0.0;
  /// "spectral" when taken from exact, "family" otherwise.
  std::string solvability_method;
  std::vector<MemberRatio> members;
};

/// Requires a circle or torus grid, 0 <= k < n and non-violated exponents.
/// Closed forms are the kernel of the staggered lattice differential; norms
/// are entrywise with the cell volume as weight.
SobolevEstimate estimate_constant(std::shared_ptr<const geometry::Grid> grid, int k, double p,
                                  double q, const FamilySpec& family = {});

/// Estimates on uniform grids of the given per-axis node counts.
std::vector<SobolevEstimate> estimate_ladder(const geometry::ChartDomain& domain, int k, double p,
                                             double q, const std::vector<int>& resolutions,
                                             const FamilySpec& family = {});

struct ObstructionPairing {
  /// Human-readable name of the harmonic test form, e.g. "<omega, dx^dy>".
  std::string name;
  double value = 0.0;
};

struct SolvabilityReport {
  std::string method;  // "hodge" or "homotopy"
  bool solvable = false;
  std::optional<forms::DifferentialForm> primitive;
  double norm_primitive = 0.0;
  double norm_form = 0.0;
  double ratio = 0.0;
  /// ||d eta - omega|| relative to ||omega|| (hodge) or max pointwise (homotopy).
  double residual = 0.0;
  /// Kernel-norm bound for the homotopy path.
  std::optional<double> bound;
  std::vector<ObstructionPairing> obstructions;
};

/// Torus/circle: harmonic obstruction check, then eta = delta G omega.
/// Ball: homotopy primitive with the given configuration (cone at the centre
/// by default). Non-closed omega is rejected.
SolvabilityReport verify_solvability(const forms::DifferentialForm& omega,
                                     std::shared_ptr<const geometry::Grid> grid, double p, double q,
                                     std::optional<homotopy::HomotopyConfig> config = std::nullopt);

struct MonotonicitySample {
  std::string label;
  double norm_q1 = 0.0, norm_q2 = 0.0;
  /// vol^{1/q1 - 1/q2} ||theta||_{q2} - ||theta||_{q1}.
  double slack = 0.0;
  bool holds = false;
  /// Relative slack below 1e-8.
  bool equality = false;
};

struct MonotonicityReport {
  double q1 = 0.0, q2 = 0.0;
  double volume = 0.0;
  double factor = 0.0;
  std::vector<MonotonicitySample> samples;
  bool all_hold() const;
};

/// Rejects the half-plane chart (infinite volume) and q1 > q2.
MonotonicityReport monotonicity_check(const geometry::Grid& grid,
                                      const geometry::DiagonalMetric& metric,
                                      const std::vector<forms::DifferentialForm>& samples,
                                      double q1, double q2);

/// Random trigonometric k-forms on a circle/torus, deterministic in seed.
std::vector<forms::DifferentialForm> random_trig_forms(int n, int k, int count, unsigned seed);

}  // namespace lqp::sobolev

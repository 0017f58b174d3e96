#pragma once

#include <vector>

#include "heatpot/fields.hpp"
#include "heatpot/geometry.hpp"
#include "heatpot/kernels.hpp"

namespace heatpot {

// Resolution knobs shared by every integration routine. The same config is
// consumed by the fixed domain rules, the singularity-centered polar rules
// and the time rules; see the builders for the exact meaning per rule.
struct QuadConfig {
  int space_points_per_dim = 16;  // GL points per dim (box) / radial points
  int time_points = 16;           // controls panel count and points per panel
  double grading_exponent = 2.0;  // geometric grading ratio toward the
                                  // singular endpoint; > 1
  double horizon = 1e8;           // truncation depth for full-range densities
  double exclusion_radius = 0.0;  // 0 = auto (half the minimal node spacing)

  void validate() const;
};

// Nodes strictly inside the domain; weights positive and summing to |Omega|.
struct SpaceRule {
  std::vector<Vec> nodes;
  std::vector<double> weights;
  Domain domain = Domain::box(1, vec1(0.0), vec1(1.0));
  double min_spacing = 0.0;
  double exclusion_radius = 0.0;  // resolved (auto or from config)
};

// Tensor Gauss-Legendre on boxes; graded Gauss-Legendre in radius times an
// equal-weight angular rule on balls (uniform circle rule in the plane, a
// fixed 26-point rule on the sphere).
SpaceRule build_space_rule(const Domain& domain, const QuadConfig& cfg);

enum class TimeSubstitution { None, Sqrt, Lemma31 };

// Quadrature in the time variable for integrals over tau < t. Nodes cluster
// toward tau = t via the substitution sigma = sqrt(t - tau) with geometric
// panel grading; full-range densities additionally map the far range through
// sigma -> 1/w^2, which keeps the tau -> -infinity tail accurate up to the
// truncation depth `horizon`.
struct TimeRule {
  std::vector<double> nodes;    // tau values, all < eval_time
  std::vector<double> weights;  // d tau weights
  TimeSubstitution substitution = TimeSubstitution::None;
  double horizon = 0.0;
  double eval_time = 0.0;
  bool empty = false;  // flagged when the range has zero measure
};

TimeRule build_time_rule(double t, double support_start, const QuadConfig& cfg);

// How the density enters the space-time product sum: plain values f(tau, y)
// or the increment f(tau, y) - f(t, y) required by kernels with a time
// derivative.
enum class DensityTerm { Value, Increment };

struct SingularIntegral {
  double value = 0.0;
  long dropped_nodes = 0;
  double excluded_weight = 0.0;  // sum of w_tau * w_y over dropped pairs
  double exclusion_bound = 0.0;  // estimate of the true mass in the excluded
                                 // parabolic cylinder (inf if not integrable)
  double tail_bound = 0.0;       // truncation bound for full-range rules
};

// Product-rule evaluation of the space-time kernel integral
//   sum_tau sum_y w_tau w_y D^eta d_t^h S_n(t - tau, x - y) * density term.
// Node pairs inside the parabolic cylinder |x - y| < r_ex, t - tau < r_ex^2
// are dropped (the kernel is unresolved there); their count, weight and an
// estimate of the true local contribution are reported, never silently lost.
SingularIntegral singular_product_integrate(const DerivativeIndex& idx,
                                            const ScalarField& density,
                                            const SpaceTimePoint& eval,
                                            const SpaceRule& space,
                                            const TimeRule& time,
                                            DensityTerm term = DensityTerm::Value);

// --- shared low-level machinery ---

// Gauss-Legendre nodes and weights on [0, 1]; cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int points);

// Composite rule for integrals over (0, length] with an integrable endpoint
// singularity at 0: substitution s = sqrt(sigma), then geometric panels
// shrinking toward s = 0 with the given ratio.
struct SegmentRule {
  std::vector<double> nodes;    // sigma values in (0, length]
  std::vector<double> weights;  // d sigma weights
};
SegmentRule graded_endpoint_rule(double length, int panels, int points_per_panel,
                                 double ratio);

// Rule for (far, far_end] using the reciprocal map w = sigma^{-1/2}; accurate
// for integrands decaying like sigma^{-k}, k >= 3/2, over many decades.
SegmentRule reciprocal_tail_rule(double far, double far_end, int panels,
                                 int points_per_panel);

// Directions and angular weights for polar integration around a point of the
// domain. Weights sum to the sphere measure (2 for n = 1). For planar boxes
// the circle is split at the corner directions so that every arc sees a
// smooth ray-length function.
struct AngularRule {
  std::vector<Vec> dirs;
  std::vector<double> weights;
};
AngularRule build_angular_rule(const Domain& domain, const Vec& center,
                               const QuadConfig& cfg);

// The fixed 26-point sphere rule used by ball space rules (exact through
// degree 7); weights sum to 4 pi.
AngularRule sphere26();

}  // namespace heatpot

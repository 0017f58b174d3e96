#pragma once

#include <cstdint>
#include <vector>

#include "heatpot/fields.hpp"
#include "heatpot/geometry.hpp"

namespace heatpot {

// Discretization of the pair suprema in the anisotropic norms: a time grid, a
// spatial point set, and a budget on how many difference-quotient pairs are
// evaluated. Pair enumeration is exhaustive when it fits into the budget and
// a seeded uniform subsample otherwise, so estimates are deterministic.
struct SamplingGrid {
  std::vector<double> times;  // sorted
  std::vector<Vec> points;
  long pair_budget = 1000000;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

// Uniform tensor grid: nt times in [t0, t1], np points per dimension over the
// closed domain (faces included; the pair suprema live on the closure).
SamplingGrid uniform_grid(const Domain& domain, int nt, int np, double t0,
                          double t1);

// Empirical sup norm plus Hoelder difference quotients. All components are
// lower bounds of the true suprema (a grid can only miss the extremal pair)
// and grow monotonically as pairs are added.
struct HolderEstimate {
  double sup_norm = 0.0;
  double time_seminorm = 0.0;   // at the time exponent used by the estimator
  double space_seminorm = 0.0;  // at the space exponent
  std::vector<HolderEstimate> gradient;  // per-coordinate C^{alpha/2;alpha}
  bool gradient_fallback = false;  // finite differences used for the gradient
  long time_pairs = 0;
  long space_pairs = 0;

  // sup + time + space seminorms (the three-term anisotropic norm).
  double total() const;
  // sup + time seminorm + sum of gradient totals (the parabolic norm layout).
  double schauder_total() const;
};

// Three-term anisotropic norm estimate: sup |u|, time quotients at exponent
// exps.alpha with the space point frozen, space quotients at exponent
// exps.beta with the time frozen.
HolderEstimate estimate_anisotropic_norm(const ScalarField& field,
                                         const AnisotropicExponents& exps,
                                         const SamplingGrid& grid);

// Parabolic norm estimate: sup |u| + time quotients at exponent (1+alpha)/2
// + per-coordinate anisotropic estimates of the spatial gradient at exponents
// (alpha/2; alpha). Fields without an analytic gradient fall back to central
// differences with step 1e-5 * diam(domain hull of the grid); the fallback is
// flagged in the result.
HolderEstimate estimate_parabolic_schauder_norm(const ScalarField& field,
                                                double alpha,
                                                const SamplingGrid& grid);

// Upper bound for the quotient norm of d_t f: minimum over representatives of
// the estimated anisotropic norm. Representatives must differ by
// time-independent fields; this is spot-checked on the grid.
double quotient_norm_upper_bound(const std::vector<ScalarField>& representatives,
                                 const AnisotropicExponents& exps,
                                 const SamplingGrid& grid);

}  // namespace heatpot

#pragma once

#include <array>
#include <vector>

#include "heatpot/geometry.hpp"

namespace heatpot {

// Argument of the heat kernel and its derivatives. (t, x) = (0, 0) is the
// one point where the kernel is undefined and is rejected by all evaluators.
struct KernelPoint {
  double t = 0.0;
  Vec x{0.0, 0.0, 0.0};
};

// Spatial multi-index eta plus time order h. The library supports
// |eta| + 2h <= 4, which covers every derivative used by the bound checks
// and the potential operators (first/second space derivatives, d/dt, mixed
// space-time up to third total order, and the Laplacian).
struct DerivativeIndex {
  std::array<int, 3> eta{0, 0, 0};
  int h = 0;

  int space_order() const { return eta[0] + eta[1] + eta[2]; }
  int total_order() const { return space_order() + 2 * h; }

  static DerivativeIndex value() { return {}; }
  static DerivativeIndex time(int h = 1) { return {{0, 0, 0}, h}; }
  static DerivativeIndex space(int i, int order = 1);
  static DerivativeIndex space_time(int i);  // d/dx_i d/dt
};

inline constexpr int kMaxDerivativeOrder = 4;

// Dimensional measure of the unit sphere in R^n, 2 pi^{n/2} / Gamma(n/2).
// Requires n >= 2.
double sphere_measure(int n);

// Fundamental solution of the Laplacian: (1/s_n) log|x| in the plane,
// |x|^{2-n} / ((2-n) s_n) for n >= 3. Requires x != 0 and n >= 2.
double laplace_kernel(const Vec& x, int n);

// Gaussian fundamental solution of the heat operator:
// (4 pi t)^{-n/2} exp(-|x|^2/(4t)) for t > 0, zero for t <= 0.
double heat_kernel(const KernelPoint& p, int n);

// Exact derivative D_x^eta d_t^h of the heat kernel, precompiled as a
// polynomial in (x, 1/t) times the Gaussian. Building the polynomial walks
// the derivative index once; evaluation is a short fused loop, so hold one
// instance per kernel index inside quadrature loops.
class HeatKernelDerivative {
 public:
  HeatKernelDerivative(const DerivativeIndex& idx, int n);

  double operator()(const KernelPoint& p) const;

  const DerivativeIndex& index() const { return idx_; }
  int dimension() const { return n_; }

 private:
  struct Term {
    std::array<int, 3> xexp;  // powers of x_1, x_2, x_3
    int uexp;                 // power of 1/t
    double coeff;
  };
  std::vector<Term> terms_;
  DerivativeIndex idx_;
  int n_ = 1;
};

// One-shot convenience wrapper around HeatKernelDerivative.
double heat_kernel_derivative(const DerivativeIndex& idx, const KernelPoint& p,
                              int n);

// Sample layout for the decay-bound fitter: times log-spaced in
// [t_min, t_max], scaled radii u = |x| / (2 sqrt(t)) uniform in [0, u_max]
// (u = 0 included), a fixed fan of directions per dimension.
struct BoundSampleSpec {
  double t_min = 1e-3;
  double t_max = 1e3;
  int time_count = 20;
  double u_max = 4.0;
  int radius_count = 50;
  int direction_count = 8;

  long sample_count(int n) const {
    return static_cast<long>(time_count) * radius_count *
           (n == 1 ? 2 : direction_count);
  }
};

// Empirical supremum of |D^eta d_t^h S_n| * t^{n/2+|eta|/2+h} * e^{|x|^2/(8t)}
// over the sample set, together with the maximizing sample.
struct KernelBoundFit {
  DerivativeIndex index;
  double fitted_constant = 0.0;
  KernelPoint max_ratio_sample;
  long sample_count = 0;
};

KernelBoundFit check_kernel_bound(const DerivativeIndex& idx, int n,
                                  const BoundSampleSpec& spec);

}  // namespace heatpot

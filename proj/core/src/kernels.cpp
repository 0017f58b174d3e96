#include "heatpot/kernels.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace heatpot {

namespace {

constexpr double kPi = std::numbers::pi;

// Exponent threshold past which poly * exp(-q) underflows to zero for every
// polynomial the supported derivative orders can produce.
constexpr double kExpUnderflow = 700.0;

void check_dimension(int n) {
  if (n < 1 || n > 3) {
    throw std::invalid_argument("heat kernel: dimension must be 1, 2 or 3");
  }
}

void check_point(const KernelPoint& p) {
  if (p.t == 0.0 && p.x[0] == 0.0 && p.x[1] == 0.0 && p.x[2] == 0.0) {
    throw std::invalid_argument("heat kernel: (t, x) = (0, 0) is undefined");
  }
}

void check_index(const DerivativeIndex& idx, int n) {
  for (int i = 0; i < 3; ++i) {
    if (idx.eta[i] < 0 || (i >= n && idx.eta[i] != 0)) {
      throw std::invalid_argument(
          "heat kernel derivative: multi-index outside dimension");
    }
  }
  if (idx.h < 0 || idx.total_order() > kMaxDerivativeOrder) {
    throw std::invalid_argument(
        "heat kernel derivative: |eta| + 2h must be <= " +
        std::to_string(kMaxDerivativeOrder));
  }
}

}  // namespace

DerivativeIndex DerivativeIndex::space(int i, int order) {
  DerivativeIndex idx;
  idx.eta[i] = order;
  return idx;
}

DerivativeIndex DerivativeIndex::space_time(int i) {
  DerivativeIndex idx;
  idx.eta[i] = 1;
  idx.h = 1;
  return idx;
}

double sphere_measure(int n) {
  if (n < 2) {
    throw std::invalid_argument("sphere_measure: requires n >= 2");
  }
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double laplace_kernel(const Vec& x, int n) {
  if (n < 2) {
    throw std::invalid_argument("laplace_kernel: requires n >= 2");
  }
  const double r = norm(x);
  if (r == 0.0) {
    throw std::invalid_argument("laplace_kernel: x = 0 is undefined");
  }
  if (n == 2) {
    return std::log(r) / sphere_measure(2);
  }
  return std::pow(r, 2.0 - n) / ((2.0 - n) * sphere_measure(n));
}

double heat_kernel(const KernelPoint& p, int n) {
  check_dimension(n);
  check_point(p);
  if (p.t <= 0.0) return 0.0;
  const double q = dot(p.x, p.x) / (4.0 * p.t);
  if (q > kExpUnderflow) return 0.0;
  return std::pow(4.0 * kPi * p.t, -0.5 * n) * std::exp(-q);
}

// The derivative is represented as q(x, 1/t) * S_n(t, x) with q a polynomial.
// Differentiation acts on the representation by
//   d/dx_i : q -> dq/dx_i - (x_i / (2t)) q
//   d/dt   : q -> dq/dt + (-n/(2t) + |x|^2/(4t^2)) q
// where dq/dt only sees the explicit 1/t powers. Monomials are keyed by
// (x exponents, 1/t exponent) during construction and flattened for
// evaluation.
HeatKernelDerivative::HeatKernelDerivative(const DerivativeIndex& idx, int n)
    : idx_(idx), n_(n) {
  check_dimension(n);
  check_index(idx, n);

  using Key = std::array<int, 4>;  // x1, x2, x3, 1/t
  std::map<Key, double> poly{{{0, 0, 0, 0}, 1.0}};

  auto add_term = [](std::map<Key, double>& dst, Key k, double c) {
    if (c == 0.0) return;
    auto [it, inserted] = dst.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0.0) dst.erase(it);
    }
  };

  auto apply_space = [&](int i) {
    std::map<Key, double> next;
    for (const auto& [k, c] : poly) {
      if (k[i] > 0) {
        Key d = k;
        d[i] -= 1;
        add_term(next, d, c * k[i]);
      }
      Key m = k;
      m[i] += 1;
      m[3] += 1;
      add_term(next, m, -0.5 * c);
    }
    poly = std::move(next);
  };

  auto apply_time = [&]() {
    std::map<Key, double> next;
    for (const auto& [k, c] : poly) {
      if (k[3] > 0) {
        Key d = k;
        d[3] += 1;
        add_term(next, d, -c * k[3]);
      }
      Key m = k;
      m[3] += 1;
      add_term(next, m, -0.5 * n_ * c);
      for (int i = 0; i < n_; ++i) {
        Key r = k;
        r[i] += 2;
        r[3] += 2;
        add_term(next, r, 0.25 * c);
      }
    }
    poly = std::move(next);
  };

  for (int rep = 0; rep < idx.h; ++rep) apply_time();
  for (int i = 0; i < 3; ++i) {
    for (int rep = 0; rep < idx.eta[i]; ++rep) apply_space(i);
  }

  terms_.reserve(poly.size());
  for (const auto& [k, c] : poly) {
    terms_.push_back(Term{{k[0], k[1], k[2]}, k[3], c});
  }
}

double HeatKernelDerivative::operator()(const KernelPoint& p) const {
  check_point(p);
  if (p.t <= 0.0) return 0.0;
  const double q = dot(p.x, p.x) / (4.0 * p.t);
  if (q > kExpUnderflow) return 0.0;
  const double gauss = std::pow(4.0 * kPi * p.t, -0.5 * n_) * std::exp(-q);
  const double u = 1.0 / p.t;
  double acc = 0.0;
  for (const auto& term : terms_) {
    double m = term.coeff;
    for (int i = 0; i < 3; ++i) {
      for (int rep = 0; rep < term.xexp[i]; ++rep) m *= p.x[i];
    }
    for (int rep = 0; rep < term.uexp; ++rep) m *= u;
    acc += m;
  }
  return acc * gauss;
}

double heat_kernel_derivative(const DerivativeIndex& idx, const KernelPoint& p,
                              int n) {
  return HeatKernelDerivative(idx, n)(p);
}

KernelBoundFit check_kernel_bound(const DerivativeIndex& idx, int n,
                                  const BoundSampleSpec& spec) {
  check_dimension(n);
  if (spec.time_count <= 0 || spec.radius_count <= 0 ||
      spec.direction_count <= 0 || !(spec.t_min > 0.0) ||
      !(spec.t_max >= spec.t_min) || !(spec.u_max > 0.0)) {
    throw std::invalid_argument("check_kernel_bound: empty or invalid sampler");
  }
  const HeatKernelDerivative deriv(idx, n);
  const double power = 0.5 * n + 0.5 * idx.space_order() + idx.h;

  // Direction fan: endpoints of coordinate axes plus rotations; n = 1 uses
  // the two signs.
  std::vector<Vec> dirs;
  if (n == 1) {
    dirs = {vec1(1.0), vec1(-1.0)};
  } else if (n == 2) {
    for (int k = 0; k < spec.direction_count; ++k) {
      const double phi = 2.0 * kPi * k / spec.direction_count;
      dirs.push_back(vec2(std::cos(phi), std::sin(phi)));
    }
  } else {
    for (int k = 0; k < spec.direction_count; ++k) {
      // Fibonacci-style spiral; deterministic and roughly uniform.
      const double z = 1.0 - 2.0 * (k + 0.5) / spec.direction_count;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = kPi * (3.0 - std::sqrt(5.0)) * k;
      dirs.push_back(vec3(rho * std::cos(phi), rho * std::sin(phi), z));
    }
  }

  KernelBoundFit fit;
  fit.index = idx;
  const double log_ratio =
      spec.time_count > 1 ? std::log(spec.t_max / spec.t_min) : 0.0;
  for (int it = 0; it < spec.time_count; ++it) {
    const double t =
        spec.time_count > 1
            ? spec.t_min * std::exp(log_ratio * it / (spec.time_count - 1))
            : spec.t_min;
    for (int iu = 0; iu < spec.radius_count; ++iu) {
      const double u = spec.u_max * iu / (spec.radius_count - 1 > 0
                                              ? spec.radius_count - 1
                                              : 1);
      const double r = 2.0 * std::sqrt(t) * u;
      for (const Vec& d : dirs) {
        const KernelPoint p{t, scale(d, r)};
        const double value = std::abs(deriv(p));
        const double ratio = value * std::pow(t, power) * std::exp(u * u / 2.0);
        ++fit.sample_count;
        if (ratio > fit.fitted_constant) {
          fit.fitted_constant = ratio;
          fit.max_ratio_sample = p;
        }
      }
    }
  }
  return fit;
}

}  // namespace heatpot

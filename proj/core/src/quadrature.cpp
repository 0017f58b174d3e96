#include "heatpot/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "heatpot/stable_sum.hpp"

namespace heatpot {

namespace {
constexpr double kPi = std::numbers::pi;
}

void QuadConfig::validate() const {
  if (space_points_per_dim < 1 || time_points < 1) {
    throw std::invalid_argument("QuadConfig: point counts must be positive");
  }
  if (!(grading_exponent > 1.0)) {
    throw std::invalid_argument("QuadConfig: grading_exponent must be > 1");
  }
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("QuadConfig: horizon must be > 0");
  }
  if (exclusion_radius < 0.0) {
    throw std::invalid_argument("QuadConfig: exclusion_radius must be >= 0");
  }
}

// Newton iteration on the Legendre recurrence; nodes remapped to [0, 1].
const GaussRule& gauss_legendre(int points) {
  if (points < 1 || points > 512) {
    throw std::invalid_argument("gauss_legendre: order out of range");
  }
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(points);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const int m = (points + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-style initial guess.
    double z = std::cos(kPi * (i + 0.75) / (points + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < points; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = points * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.nodes[i] = 0.5 * (1.0 - z);
    rule.nodes[points - 1 - i] = 0.5 * (1.0 + z);
    rule.weights[i] = 0.5 * w;
    rule.weights[points - 1 - i] = 0.5 * w;
  }
  return cache.emplace(points, std::move(rule)).first->second;
}

SegmentRule graded_endpoint_rule(double length, int panels,
                                 int points_per_panel, double ratio) {
  if (!(length > 0.0)) {
    throw std::invalid_argument("graded_endpoint_rule: length must be > 0");
  }
  if (panels < 1 || points_per_panel < 1 || !(ratio > 1.0)) {
    throw std::invalid_argument("graded_endpoint_rule: bad panel layout");
  }
  const GaussRule& gl = gauss_legendre(points_per_panel);
  const double s_end = std::sqrt(length);

  // Panel boundaries in s = sqrt(sigma) space: s_end * ratio^{-k}, the last
  // panel closing down to 0.
  std::vector<double> bounds(panels + 1);
  bounds[panels] = s_end;
  for (int k = panels - 1; k > 0; --k) bounds[k] = bounds[k + 1] / ratio;
  bounds[0] = 0.0;

  SegmentRule rule;
  rule.nodes.reserve(static_cast<size_t>(panels) * points_per_panel);
  rule.weights.reserve(static_cast<size_t>(panels) * points_per_panel);
  for (int k = 0; k < panels; ++k) {
    const double a = bounds[k], b = bounds[k + 1];
    for (int j = 0; j < points_per_panel; ++j) {
      const double s = a + (b - a) * gl.nodes[j];
      if (s == 0.0) continue;
      rule.nodes.push_back(s * s);
      rule.weights.push_back((b - a) * gl.weights[j] * 2.0 * s);  // d sigma
    }
  }
  return rule;
}

SegmentRule reciprocal_tail_rule(double far, double far_end, int panels,
                                 int points_per_panel) {
  if (!(far > 0.0) || !(far_end > far)) {
    throw std::invalid_argument("reciprocal_tail_rule: need 0 < far < far_end");
  }
  if (panels < 1 || points_per_panel < 1) {
    throw std::invalid_argument("reciprocal_tail_rule: bad panel layout");
  }
  const GaussRule& gl = gauss_legendre(points_per_panel);
  const double w_hi = 1.0 / std::sqrt(far);      // maps to sigma = far
  const double w_lo = 1.0 / std::sqrt(far_end);  // maps to sigma = far_end

  // Geometric panels in w-space toward w = w_lo (large sigma).
  std::vector<double> bounds(panels + 1);
  const double factor = std::pow(w_hi / w_lo, 1.0 / panels);
  bounds[0] = w_lo;
  for (int k = 1; k <= panels; ++k) bounds[k] = bounds[k - 1] * factor;
  bounds[panels] = w_hi;

  SegmentRule rule;
  rule.nodes.reserve(static_cast<size_t>(panels) * points_per_panel);
  rule.weights.reserve(static_cast<size_t>(panels) * points_per_panel);
  for (int k = 0; k < panels; ++k) {
    const double a = bounds[k], b = bounds[k + 1];
    for (int j = 0; j < points_per_panel; ++j) {
      const double w = a + (b - a) * gl.nodes[j];
      rule.nodes.push_back(1.0 / (w * w));
      rule.weights.push_back((b - a) * gl.weights[j] * 2.0 / (w * w * w));
    }
  }
  return rule;
}

namespace {

// 26-point rule on the unit sphere: 6 axis points, 12 edge midpoints, 8 cube
// corners; relative weights 1/21, 4/105, 27/840 (exact through degree 7).
AngularRule make_sphere26() {
  AngularRule rule;
  const double w1 = 4.0 * kPi / 21.0;
  const double w2 = 4.0 * kPi * 4.0 / 105.0;
  const double w3 = 4.0 * kPi * 27.0 / 840.0;
  for (int i = 0; i < 3; ++i) {
    for (double s : {1.0, -1.0}) {
      Vec v{0, 0, 0};
      v[i] = s;
      rule.dirs.push_back(v);
      rule.weights.push_back(w1);
    }
  }
  const double isq2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      for (double si : {1.0, -1.0}) {
        for (double sj : {1.0, -1.0}) {
          Vec v{0, 0, 0};
          v[i] = si * isq2;
          v[j] = sj * isq2;
          rule.dirs.push_back(v);
          rule.weights.push_back(w2);
        }
      }
    }
  }
  const double isq3 = 1.0 / std::sqrt(3.0);
  for (double s0 : {1.0, -1.0}) {
    for (double s1 : {1.0, -1.0}) {
      for (double s2 : {1.0, -1.0}) {
        rule.dirs.push_back(Vec{s0 * isq3, s1 * isq3, s2 * isq3});
        rule.weights.push_back(w3);
      }
    }
  }
  return rule;
}

}  // namespace

AngularRule sphere26() {
  static const AngularRule rule = make_sphere26();
  return rule;
}

AngularRule build_angular_rule(const Domain& domain, const Vec& center,
                               const QuadConfig& cfg) {
  const int n = domain.dimension();
  AngularRule rule;
  if (n == 1) {
    rule.dirs = {vec1(1.0), vec1(-1.0)};
    rule.weights = {1.0, 1.0};
    return rule;
  }
  if (n == 2) {
    if (domain.kind() == DomainKind::Ball) {
      // Uniform circle rule: spectrally accurate for the smooth ray-length
      // function of a disk.
      const int m = std::max(16, 4 * cfg.space_points_per_dim);
      for (int k = 0; k < m; ++k) {
        const double phi = 2.0 * kPi * (k + 0.5) / m;
        rule.dirs.push_back(vec2(std::cos(phi), std::sin(phi)));
        rule.weights.push_back(2.0 * kPi / m);
      }
      return rule;
    }
    // Box: the ray length has kinks at the corner directions; Gauss panels
    // per arc keep each integrand smooth.
    std::vector<double> corners;
    for (double cx : {domain.lo()[0], domain.hi()[0]}) {
      for (double cy : {domain.lo()[1], domain.hi()[1]}) {
        corners.push_back(std::atan2(cy - center[1], cx - center[0]));
      }
    }
    std::sort(corners.begin(), corners.end());
    corners.push_back(corners.front() + 2.0 * kPi);
    const int per_arc = std::max(6, cfg.space_points_per_dim);
    const GaussRule& gl = gauss_legendre(per_arc);
    for (size_t a = 0; a + 1 < corners.size(); ++a) {
      const double lo = corners[a], hi = corners[a + 1];
      if (hi - lo < 1e-14) continue;
      for (int j = 0; j < per_arc; ++j) {
        const double phi = lo + (hi - lo) * gl.nodes[j];
        rule.dirs.push_back(vec2(std::cos(phi), std::sin(phi)));
        rule.weights.push_back((hi - lo) * gl.weights[j]);
      }
    }
    return rule;
  }
  if (domain.kind() == DomainKind::Ball) {
    // Product rule: Gauss-Legendre in cos(theta) x uniform in phi.
    const int m_mu = std::max(8, cfg.space_points_per_dim / 2);
    const int m_phi = 2 * m_mu;
    const GaussRule& gl = gauss_legendre(m_mu);
    for (int i = 0; i < m_mu; ++i) {
      const double mu = -1.0 + 2.0 * gl.nodes[i];
      const double rho = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      for (int k = 0; k < m_phi; ++k) {
        const double phi = 2.0 * kPi * (k + 0.5) / m_phi;
        rule.dirs.push_back(
            vec3(rho * std::cos(phi), rho * std::sin(phi), mu));
        rule.weights.push_back(2.0 * gl.weights[i] * 2.0 * kPi / m_phi);
      }
    }
    return rule;
  }
  // 3d box: ray lengths are only piecewise smooth over the sphere, so use a
  // denser product grid; convergence is algebraic here.
  const int m_mu = std::max(12, cfg.space_points_per_dim);
  const int m_phi = 2 * m_mu;
  const GaussRule& gl = gauss_legendre(m_mu);
  for (int i = 0; i < m_mu; ++i) {
    const double mu = -1.0 + 2.0 * gl.nodes[i];
    const double rho = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    for (int k = 0; k < m_phi; ++k) {
      const double phi = 2.0 * kPi * (k + 0.5) / m_phi;
      rule.dirs.push_back(vec3(rho * std::cos(phi), rho * std::sin(phi), mu));
      rule.weights.push_back(2.0 * gl.weights[i] * 2.0 * kPi / m_phi);
    }
  }
  return rule;
}

namespace {

void append_ball_rule(SpaceRule& rule, const Domain& domain,
                      const QuadConfig& cfg) {
  const int n = domain.dimension();
  const int m_r = cfg.space_points_per_dim;
  const double R = domain.radius();
  const double gamma = cfg.grading_exponent;
  const GaussRule& gl = gauss_legendre(m_r);

  AngularRule ang;
  if (n == 1) {
    ang.dirs = {vec1(1.0), vec1(-1.0)};
    ang.weights = {1.0, 1.0};
  } else if (n == 2) {
    const int m = std::max(8, 4 * m_r);
    for (int k = 0; k < m; ++k) {
      const double phi = 2.0 * kPi * (k + 0.5) / m;
      ang.dirs.push_back(vec2(std::cos(phi), std::sin(phi)));
      ang.weights.push_back(2.0 * kPi / m);
    }
  } else {
    ang = sphere26();
  }

  // Radial variable graded toward the center: r = R v^gamma. The jacobian
  // R gamma v^{gamma-1} r^{n-1} keeps the weight sum exactly R^n/n per unit
  // angular weight.
  for (size_t a = 0; a < ang.dirs.size(); ++a) {
    for (int j = 0; j < m_r; ++j) {
      const double v = gl.nodes[j];
      const double r = R * std::pow(v, gamma);
      if (r == 0.0) continue;
      const double jac = R * gamma * std::pow(v, gamma - 1.0);
      rule.nodes.push_back(add(domain.center(), scale(ang.dirs[a], r)));
      rule.weights.push_back(ang.weights[a] * gl.weights[j] * jac *
                             std::pow(r, n - 1));
    }
  }

  // Minimal node spacing: radial gaps dominate near the center.
  double min_gap = R;
  double prev = 0.0;
  for (int j = 0; j < m_r; ++j) {
    const double r = R * std::pow(gl.nodes[j], gamma);
    min_gap = std::min(min_gap, r - prev);
    prev = r;
  }
  rule.min_spacing = min_gap;
}

void append_box_rule(SpaceRule& rule, const Domain& domain,
                     const QuadConfig& cfg) {
  const int n = domain.dimension();
  const int m = cfg.space_points_per_dim;
  const GaussRule& gl = gauss_legendre(m);

  std::array<std::vector<double>, 3> axis_nodes, axis_weights;
  double min_gap = domain.diameter();
  for (int i = 0; i < n; ++i) {
    const double a = domain.lo()[i], b = domain.hi()[i];
    axis_nodes[i].resize(m);
    axis_weights[i].resize(m);
    for (int j = 0; j < m; ++j) {
      axis_nodes[i][j] = a + (b - a) * gl.nodes[j];
      axis_weights[i][j] = (b - a) * gl.weights[j];
      if (j > 0) {
        min_gap = std::min(min_gap, axis_nodes[i][j] - axis_nodes[i][j - 1]);
      }
    }
  }
  rule.min_spacing = min_gap;

  std::array<int, 3> id{0, 0, 0};
  while (true) {
    Vec x{0, 0, 0};
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      x[i] = axis_nodes[i][id[i]];
      w *= axis_weights[i][id[i]];
    }
    rule.nodes.push_back(x);
    rule.weights.push_back(w);
    int i = 0;
    for (; i < n; ++i) {
      if (++id[i] < m) break;
      id[i] = 0;
    }
    if (i == n) break;
  }
}

}  // namespace

SpaceRule build_space_rule(const Domain& domain, const QuadConfig& cfg) {
  cfg.validate();
  SpaceRule rule;
  rule.domain = domain;
  if (domain.kind() == DomainKind::Box) {
    append_box_rule(rule, domain, cfg);
  } else {
    append_ball_rule(rule, domain, cfg);
  }
  rule.exclusion_radius =
      cfg.exclusion_radius > 0.0 ? cfg.exclusion_radius : 0.5 * rule.min_spacing;
  return rule;
}

TimeRule build_time_rule(double t, double support_start,
                         const QuadConfig& cfg) {
  cfg.validate();
  TimeRule rule;
  rule.eval_time = t;

  const int points_per_panel = std::max(4, cfg.time_points / 2);
  const int near_panels = std::max(8, cfg.time_points);

  if (std::isfinite(support_start)) {
    rule.substitution = TimeSubstitution::Sqrt;
    const double length = t - support_start;
    rule.horizon = std::max(length, 0.0);
    if (!(length > 0.0)) {
      rule.empty = true;
      return rule;
    }
    SegmentRule seg = graded_endpoint_rule(length, near_panels,
                                           points_per_panel,
                                           cfg.grading_exponent);
    for (size_t i = 0; i < seg.nodes.size(); ++i) {
      rule.nodes.push_back(t - seg.nodes[i]);
      rule.weights.push_back(seg.weights[i]);
    }
    return rule;
  }

  // Full-range density: graded rule on sigma in (0, split], reciprocal map on
  // [split, horizon]. The reciprocal map keeps integrands decaying like
  // sigma^{-3/2} or faster accurate over the whole truncated tail.
  rule.substitution = TimeSubstitution::Lemma31;
  rule.horizon = cfg.horizon;
  const double split = std::min(1.0, 0.5 * cfg.horizon);
  SegmentRule near = graded_endpoint_rule(split, near_panels, points_per_panel,
                                          cfg.grading_exponent);
  for (size_t i = 0; i < near.nodes.size(); ++i) {
    rule.nodes.push_back(t - near.nodes[i]);
    rule.weights.push_back(near.weights[i]);
  }
  if (cfg.horizon > split) {
    const int far_panels = std::max(
        6, static_cast<int>(std::ceil(std::log2(cfg.horizon / split) / 2.0)));
    SegmentRule far =
        reciprocal_tail_rule(split, cfg.horizon, far_panels, points_per_panel);
    for (size_t i = 0; i < far.nodes.size(); ++i) {
      rule.nodes.push_back(t - far.nodes[i]);
      rule.weights.push_back(far.weights[i]);
    }
  }
  return rule;
}

SingularIntegral singular_product_integrate(const DerivativeIndex& idx,
                                            const ScalarField& density,
                                            const SpaceTimePoint& eval,
                                            const SpaceRule& space,
                                            const TimeRule& time,
                                            DensityTerm term) {
  SingularIntegral result;
  if (time.empty || time.nodes.empty() || space.nodes.empty()) return result;

  const int n = space.domain.dimension();
  const HeatKernelDerivative deriv(idx, n);
  const double r_ex = space.exclusion_radius;
  const double sigma_ex = r_ex * r_ex;

  // Density values at the evaluation time, needed for increments.
  std::vector<double> f_at_t;
  if (term == DensityTerm::Increment) {
    f_at_t.resize(space.nodes.size());
    for (size_t j = 0; j < space.nodes.size(); ++j) {
      f_at_t[j] = density(eval.t, space.nodes[j]);
    }
  }

  StableSum total;
  StableSum excluded_w;
  double max_excluded_density = 0.0;

  for (size_t k = 0; k < time.nodes.size(); ++k) {
    const double tau = time.nodes[k];
    const double w_tau = time.weights[k];
    const double sigma = eval.t - tau;
    if (!(sigma > 0.0)) continue;
    StableSum slice;
    for (size_t j = 0; j < space.nodes.size(); ++j) {
      const Vec& y = space.nodes[j];
      const double r = dist(eval.x, y);
      double fval = density(tau, y);
      if (term == DensityTerm::Increment) fval -= f_at_t[j];
      if (r < r_ex && sigma < sigma_ex) {
        ++result.dropped_nodes;
        excluded_w.add(w_tau * space.weights[j]);
        max_excluded_density = std::max(max_excluded_density, std::abs(fval));
        continue;
      }
      const double kv = deriv(KernelPoint{sigma, sub(eval.x, y)});
      if (kv == 0.0 || fval == 0.0) continue;
      const double contrib = space.weights[j] * kv * fval;
      if (!std::isfinite(contrib)) {
        std::ostringstream os;
        os << "singular_product_integrate: non-finite contribution at tau="
           << tau << ", y=(" << y[0] << "," << y[1] << "," << y[2] << ")";
        throw std::runtime_error(os.str());
      }
      slice.add(contrib);
    }
    total.add(w_tau * slice.value());
  }
  result.value = total.value();
  if (!std::isfinite(result.value)) {
    throw std::runtime_error(
        "singular_product_integrate: accumulated value is not finite");
  }
  result.excluded_weight = excluded_w.value();

  // Local estimate for the skipped parabolic cylinder: with the decay bound
  // |D^eta d_t^h S_n| <= C t^{-n/2-|eta|/2-h} e^{-|x|^2/(8t)} and the full
  // spatial Gaussian integral (8 pi sigma)^{n/2}, the cylinder mass is
  //   C (8 pi)^{n/2} sup|f| * r_ex^{2e} / e,  e = 1 - |eta|/2 - h (+ alpha
  // for increments), provided e > 0.
  if (result.dropped_nodes > 0) {
    double expo = 1.0 - 0.5 * idx.space_order() - idx.h;
    if (term == DensityTerm::Increment && density.claimed_exponents()) {
      expo += density.claimed_exponents()->alpha;
    }
    if (expo > 0.0 && r_ex > 0.0) {
      const KernelBoundFit fit = check_kernel_bound(idx, n, BoundSampleSpec{});
      result.exclusion_bound = fit.fitted_constant *
                               std::pow(8.0 * kPi, 0.5 * n) *
                               max_excluded_density *
                               std::pow(sigma_ex, expo) / expo;
    } else {
      result.exclusion_bound = std::numeric_limits<double>::infinity();
    }
  }

  // Tail bound past the horizon for full-range rules; finite only where the
  // raw kernel is integrable at infinity (n >= 3 for the plain kernel).
  if (time.substitution == TimeSubstitution::Lemma31) {
    const double decay = 0.5 * n + 0.5 * idx.space_order() + idx.h;
    if (decay > 1.0) {
      double sup_f = std::abs(density(eval.t - time.horizon, eval.x));
      for (const Vec& y : space.nodes) {
        sup_f = std::max(sup_f, std::abs(density(eval.t - time.horizon, y)));
      }
      const KernelBoundFit fit = check_kernel_bound(idx, n, BoundSampleSpec{});
      result.tail_bound = fit.fitted_constant * space.domain.volume() * sup_f *
                          std::pow(time.horizon, 1.0 - decay) / (decay - 1.0);
    } else {
      result.tail_bound = std::numeric_limits<double>::infinity();
    }
  }
  return result;
}

}  // namespace heatpot

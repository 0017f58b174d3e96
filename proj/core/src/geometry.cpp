#include "heatpot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace heatpot {

Vec vec1(double x) { return {x, 0.0, 0.0}; }
Vec vec2(double x, double y) { return {x, y, 0.0}; }
Vec vec3(double x, double y, double z) { return {x, y, z}; }

double dot(const Vec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

double dist(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

Vec sub(const Vec& a, const Vec& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Vec add(const Vec& a, const Vec& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

Vec scale(const Vec& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

namespace {

void check_dimension(int n) {
  if (n < 1 || n > 3) {
    throw std::invalid_argument("Domain: dimension must be 1, 2 or 3, got " +
                                std::to_string(n));
  }
}

}  // namespace

Domain Domain::box(int n, const Vec& lo, const Vec& hi, double final_time) {
  check_dimension(n);
  for (int i = 0; i < n; ++i) {
    if (!(lo[i] < hi[i])) {
      throw std::invalid_argument("Domain::box: empty interior");
    }
  }
  Domain d;
  d.kind_ = DomainKind::Box;
  d.n_ = n;
  d.lo_ = lo;
  d.hi_ = hi;
  for (int i = n; i < 3; ++i) {
    d.lo_[i] = 0.0;
    d.hi_[i] = 0.0;
  }
  d.final_time_ = final_time;
  return d;
}

Domain Domain::ball(int n, const Vec& center, double radius,
                    double final_time) {
  check_dimension(n);
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("Domain::ball: radius must be positive");
  }
  Domain d;
  d.kind_ = DomainKind::Ball;
  d.n_ = n;
  d.center_ = center;
  for (int i = n; i < 3; ++i) d.center_[i] = 0.0;
  d.radius_ = radius;
  d.final_time_ = final_time;
  return d;
}

double Domain::volume() const {
  if (kind_ == DomainKind::Box) {
    double v = 1.0;
    for (int i = 0; i < n_; ++i) v *= hi_[i] - lo_[i];
    return v;
  }
  switch (n_) {
    case 1:
      return 2.0 * radius_;
    case 2:
      return std::numbers::pi * radius_ * radius_;
    default:
      return 4.0 / 3.0 * std::numbers::pi * radius_ * radius_ * radius_;
  }
}

double Domain::diameter() const {
  if (kind_ == DomainKind::Ball) return 2.0 * radius_;
  double s = 0.0;
  for (int i = 0; i < n_; ++i) {
    const double e = hi_[i] - lo_[i];
    s += e * e;
  }
  return std::sqrt(s);
}

Vec Domain::centroid() const {
  if (kind_ == DomainKind::Ball) return center_;
  Vec c{0, 0, 0};
  for (int i = 0; i < n_; ++i) c[i] = 0.5 * (lo_[i] + hi_[i]);
  return c;
}

bool Domain::contains(const Vec& x) const {
  if (kind_ == DomainKind::Box) {
    for (int i = 0; i < n_; ++i) {
      if (!(x[i] > lo_[i] && x[i] < hi_[i])) return false;
    }
    return true;
  }
  return dist(x, center_) < radius_;
}

bool Domain::contains_closure(const Vec& x) const {
  const double tol = 1e-12 * std::max(1.0, diameter());
  if (kind_ == DomainKind::Box) {
    for (int i = 0; i < n_; ++i) {
      if (x[i] < lo_[i] - tol || x[i] > hi_[i] + tol) return false;
    }
    return true;
  }
  return dist(x, center_) <= radius_ + tol;
}

double Domain::distance_to_boundary(const Vec& x) const {
  if (kind_ == DomainKind::Ball) return radius_ - dist(x, center_);
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_; ++i) {
    d = std::min(d, std::min(x[i] - lo_[i], hi_[i] - x[i]));
  }
  return d;
}

double Domain::ray_exit(const Vec& origin, const Vec& dir) const {
  if (kind_ == DomainKind::Ball) {
    // Solve |p + r*dir| = R with p = origin - center; take the r >= 0 root.
    const Vec p = sub(origin, center_);
    const double b = dot(p, dir);
    const double c = dot(p, p) - radius_ * radius_;
    const double disc = b * b - c;
    if (disc <= 0.0) return 0.0;
    const double r = -b + std::sqrt(disc);
    return std::max(r, 0.0);
  }
  double r = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_; ++i) {
    if (dir[i] > 1e-15) {
      r = std::min(r, (hi_[i] - origin[i]) / dir[i]);
    } else if (dir[i] < -1e-15) {
      r = std::min(r, (lo_[i] - origin[i]) / dir[i]);
    }
  }
  return std::max(r, 0.0);
}

Vec Domain::boundary_normal(const Vec& x) const {
  if (kind_ == DomainKind::Ball) {
    const Vec p = sub(x, center_);
    const double r = norm(p);
    if (r == 0.0) {
      throw std::invalid_argument("boundary_normal: x is the ball center");
    }
    return scale(p, 1.0 / r);
  }
  // Nearest face of the box.
  int best_i = 0;
  double best_d = std::numeric_limits<double>::infinity();
  double sign = 1.0;
  for (int i = 0; i < n_; ++i) {
    if (x[i] - lo_[i] < best_d) {
      best_d = x[i] - lo_[i];
      best_i = i;
      sign = -1.0;
    }
    if (hi_[i] - x[i] < best_d) {
      best_d = hi_[i] - x[i];
      best_i = i;
      sign = 1.0;
    }
  }
  Vec nu{0, 0, 0};
  nu[best_i] = sign;
  return nu;
}

std::string Domain::describe() const {
  std::ostringstream os;
  if (kind_ == DomainKind::Box) {
    os << "box" << n_ << "d[";
    for (int i = 0; i < n_; ++i) {
      if (i) os << "x";
      os << "(" << lo_[i] << "," << hi_[i] << ")";
    }
    os << "]";
  } else {
    os << "ball" << n_ << "d(r=" << radius_ << ")";
  }
  return os.str();
}

}  // namespace heatpot

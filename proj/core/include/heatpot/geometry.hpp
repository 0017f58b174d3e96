#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <string>

namespace heatpot {

// Spatial point in R^n, n <= 3. Unused trailing components stay zero so that
// distance and dot products can run over all three lanes unconditionally.
using Vec = std::array<double, 3>;

Vec vec1(double x);
Vec vec2(double x, double y);
Vec vec3(double x, double y, double z);

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
double dist(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec scale(const Vec& a, double s);

// Evaluation coordinates of all potentials: a time and a spatial point.
struct SpaceTimePoint {
  double t = 0.0;
  Vec x{0.0, 0.0, 0.0};
};

enum class DomainKind { Box, Ball };

// Bounded open set in R^n (axis-aligned box or ball) together with the final
// time T of the space-time cylinder. T may be +infinity.
class Domain {
 public:
  static Domain box(int n, const Vec& lo, const Vec& hi,
                    double final_time = kNoFinalTime);
  static Domain ball(int n, const Vec& center, double radius,
                     double final_time = kNoFinalTime);

  static constexpr double kNoFinalTime =
      std::numeric_limits<double>::infinity();

  DomainKind kind() const { return kind_; }
  int dimension() const { return n_; }
  double final_time() const { return final_time_; }

  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }

  double volume() const;
  double diameter() const;
  Vec centroid() const;

  bool contains(const Vec& x) const;          // strict interior
  bool contains_closure(const Vec& x) const;  // closure, with tolerance
  double distance_to_boundary(const Vec& x) const;

  // Length of the segment {origin + r*dir : r >= 0} inside the closure;
  // origin must lie in the closure, dir must be a unit vector.
  double ray_exit(const Vec& origin, const Vec& dir) const;

  // Outward unit normal at a boundary point (nearest face for boxes).
  Vec boundary_normal(const Vec& x) const;

  std::string describe() const;

 private:
  Domain() = default;
  DomainKind kind_ = DomainKind::Box;
  int n_ = 1;
  Vec lo_{0, 0, 0}, hi_{0, 0, 0};    // box
  Vec center_{0, 0, 0};              // ball
  double radius_ = 0.0;              // ball
  double final_time_ = kNoFinalTime;
};

}  // namespace heatpot

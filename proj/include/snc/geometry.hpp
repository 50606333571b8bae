#pragma once

#include <cmath>

namespace snc {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }

inline double distance_sq(Point2 a, Point2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(Point2 a, Point2 b) { return std::sqrt(distance_sq(a, b)); }

inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Disc-shaped simulation region. Links are only evaluated inside the
/// inner disc of radius `radius - guard`, away from truncation effects.
struct SimulationWindow {
  Point2 center{};
  double radius = 1.0;
  double guard = 0.0;

  void validate() const;

  double evaluation_radius() const { return radius - guard; }
  double area() const { return M_PI * radius * radius; }
  bool contains(Point2 p) const { return distance_sq(p, center) <= radius * radius; }
  bool in_evaluation_region(Point2 p) const {
    const double r = evaluation_radius();
    return distance_sq(p, center) <= r * r;
  }
};

}  // namespace snc

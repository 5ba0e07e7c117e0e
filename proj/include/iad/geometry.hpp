#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "iad/errors.hpp"

namespace iad {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(const Point2& p, const Point2& q) { return std::hypot(p.x - q.x, p.y - q.y); }

inline double squared_distance(const Point2& p, const Point2& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return dx * dx + dy * dy;
}

struct Circle {
  Point2 center;
  double radius = 0.0;

  friend bool operator==(const Circle&, const Circle&) = default;
};

// Triangles with area at or below this (m^2) are treated as collinear.
inline constexpr double kCollinearAreaTol = 1e-9;

inline Circle circumcircle(const Point2& p1, const Point2& p2, const Point2& p3) {
  // Translate to p1 for conditioning.
  const double bx = p2.x - p1.x, by = p2.y - p1.y;
  const double cx = p3.x - p1.x, cy = p3.y - p1.y;
  const double cross = bx * cy - by * cx;
  if (std::abs(cross) * 0.5 <= kCollinearAreaTol)
    throw DegenerateGeometryError("circumcircle: points are collinear or coincident");
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const double ux = (cy * b2 - by * c2) / (2.0 * cross);
  const double uy = (bx * c2 - cx * b2) / (2.0 * cross);
  return {{p1.x + ux, p1.y + uy}, std::hypot(ux, uy)};
}

struct FilterParams {
  double d_tolerable = 60.0;
};

// Depth of the lens r + r' - d, clamped at zero for disjoint circles.
inline double overlap_depth(const Circle& c1, const Circle& c2) {
  return std::max(0.0, c1.radius + c2.radius - distance(c1.center, c2.center));
}

// Tolerable-distance admission for a pair of coverage discs:
// (disjoint OR overlap depth < d_tolerable) AND neither center inside the other disc.
inline bool overlap_filter(const Circle& candidate, const Circle& existing, const FilterParams& fp) {
  const double d = distance(candidate.center, existing.center);
  const double rsum = candidate.radius + existing.radius;
  const bool shallow = d > rsum || rsum - d < fp.d_tolerable;
  return shallow && d > candidate.radius && d > existing.radius;
}

inline bool all_pairs_admissible(const Circle& candidate, std::span<const Circle> deployed,
                                 const FilterParams& fp) {
  for (const Circle& c : deployed)
    if (!overlap_filter(candidate, c, fp)) return false;
  return true;
}

}  // namespace iad

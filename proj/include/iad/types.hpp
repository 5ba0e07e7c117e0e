#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "iad/geometry.hpp"

namespace iad {

struct GroundUser {
  double x = 0.0;
  double y = 0.0;
  std::optional<std::size_t> label;  // serving UAV once allocated

  Point2 position() const { return {x, y}; }

  friend bool operator==(const GroundUser&, const GroundUser&) = default;
};

struct UavPlacement {
  double x = 0.0;
  double y = 0.0;
  double altitude = 0.0;
  double radius = 0.0;

  Point2 center() const { return {x, y}; }
  Circle disc() const { return {{x, y}, radius}; }

  friend bool operator==(const UavPlacement&, const UavPlacement&) = default;
};

// Per-GU serving UAV index, or nullopt when unassociated.
using Association = std::vector<std::optional<std::size_t>>;

struct Deployment {
  std::vector<UavPlacement> placements;
  Association association;
  std::uint64_t seed = 0;

  std::vector<std::size_t> loads() const {
    std::vector<std::size_t> n(placements.size(), 0);
    for (const auto& a : association)
      if (a && *a < n.size()) ++n[*a];
    return n;
  }

  std::vector<Circle> discs() const {
    std::vector<Circle> out;
    out.reserve(placements.size());
    for (const auto& p : placements) out.push_back(p.disc());
    return out;
  }

  friend bool operator==(const Deployment&, const Deployment&) = default;
};

inline std::vector<Point2> positions(const std::vector<GroundUser>& gus) {
  std::vector<Point2> out;
  out.reserve(gus.size());
  for (const auto& g : gus) out.push_back(g.position());
  return out;
}

// Horizontal radius floor for committed discs; keeps altitude and slant range positive.
inline constexpr double kMinCoverageRadius = 1.0;

}  // namespace iad

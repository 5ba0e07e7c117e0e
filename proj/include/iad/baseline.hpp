#pragma once

// k-means++ placement baseline: seeding by D^2 sampling, Lloyd iterations,
// one UAV per non-empty cluster. No overlap control.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "iad/channel.hpp"
#include "iad/errors.hpp"
#include "iad/geometry.hpp"
#include "iad/types.hpp"

namespace iad {

struct KmeansParams {
  std::size_t k = 25;
  std::size_t max_iters = 100;
  double tol = 1e-3;
  std::uint64_t seed = 0;

  void validate() const {
    if (k < 1) throw ConfigError("kmeans: k must be at least 1");
    if (max_iters < 1) throw ConfigError("kmeans: max_iters must be at least 1");
    if (!(tol > 0.0)) throw ConfigError("kmeans: tol must be positive");
  }
};

struct Clustering {
  std::vector<Point2> centroids;
  std::vector<std::size_t> assignment;
  std::size_t iterations = 0;
};

inline std::size_t nearest_centroid(const Point2& p, std::span<const Point2> centroids) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = squared_distance(p, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

inline double within_cluster_ss(std::span<const Point2> pts, const Clustering& cl) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    s += squared_distance(pts[i], cl.centroids[cl.assignment[i]]);
  return s;
}

inline std::vector<Point2> kmeanspp_seeds(std::span<const Point2> pts, std::size_t k,
                                          std::mt19937_64& rng) {
  std::vector<Point2> centers;
  centers.reserve(k);
  std::uniform_int_distribution<std::size_t> first(0, pts.size() - 1);
  centers.push_back(pts[first(rng)]);
  std::vector<double> d2(pts.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : centers) best = std::min(best, squared_distance(pts[i], c));
      d2[i] = best;
      total += best;
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double acc = 0.0;
      pick = pts.size() - 1;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        acc += d2[i];
        if (acc > target && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = first(rng);  // all points coincide with centers already
    }
    centers.push_back(pts[pick]);
  }
  return centers;
}

inline Clustering kmeanspp(std::span<const Point2> pts, const KmeansParams& kp) {
  kp.validate();
  if (pts.size() < kp.k)
    throw std::invalid_argument("kmeanspp: need at least k points (" + std::to_string(pts.size()) +
                                " < " + std::to_string(kp.k) + ")");
  std::mt19937_64 rng(kp.seed);
  Clustering cl;
  cl.centroids = kmeanspp_seeds(pts, kp.k, rng);
  cl.assignment.assign(pts.size(), 0);

  std::vector<double> sx(kp.k), sy(kp.k);
  std::vector<std::size_t> cnt(kp.k);
  for (std::size_t it = 0; it < kp.max_iters; ++it) {
    for (std::size_t i = 0; i < pts.size(); ++i) cl.assignment[i] = nearest_centroid(pts[i], cl.centroids);
    std::fill(sx.begin(), sx.end(), 0.0);
    std::fill(sy.begin(), sy.end(), 0.0);
    std::fill(cnt.begin(), cnt.end(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      sx[cl.assignment[i]] += pts[i].x;
      sy[cl.assignment[i]] += pts[i].y;
      ++cnt[cl.assignment[i]];
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < kp.k; ++c) {
      if (cnt[c] == 0) continue;  // empty cluster keeps its centroid
      const Point2 next{sx[c] / cnt[c], sy[c] / cnt[c]};
      shift = std::max(shift, distance(next, cl.centroids[c]));
      cl.centroids[c] = next;
    }
    cl.iterations = it + 1;
    if (shift < kp.tol) break;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) cl.assignment[i] = nearest_centroid(pts[i], cl.centroids);
  return cl;
}

// Each non-empty cluster becomes a UAV at its centroid with radius
// min(farthest member, r_max); members inside that radius associate nearest
// first up to n_max.
inline Deployment kmeanspp_deploy(std::span<const Point2> pts, const CoverageProfile& profile,
                                  std::size_t n_max, const KmeansParams& kp) {
  const Clustering cl = kmeanspp(pts, kp);
  Deployment dep;
  dep.seed = kp.seed;
  dep.association.assign(pts.size(), std::nullopt);

  std::vector<std::vector<std::size_t>> members(kp.k);
  for (std::size_t i = 0; i < pts.size(); ++i) members[cl.assignment[i]].push_back(i);

  for (std::size_t c = 0; c < kp.k; ++c) {
    if (members[c].empty()) continue;
    const Point2 ctr = cl.centroids[c];
    std::vector<std::pair<double, std::size_t>> by_dist;
    for (std::size_t i : members[c]) by_dist.emplace_back(distance(ctr, pts[i]), i);
    std::sort(by_dist.begin(), by_dist.end());
    const double radius =
        std::max(kMinCoverageRadius, std::min(by_dist.back().first, profile.r_max));

    const std::size_t j = dep.placements.size();
    dep.placements.push_back({ctr.x, ctr.y, profile.altitude_for(radius), radius});
    std::size_t taken = 0;
    for (const auto& [d, i] : by_dist) {
      if (d > radius || taken == n_max) break;
      dep.association[i] = j;
      ++taken;
    }
  }
  return dep;
}

}  // namespace iad

#pragma once

// Interference-aware deployment: UAVs are placed one at a time over the
// still-unlabeled GUs. Each placement must carry between n_min and n_max GUs
// within r_max (adaptive association control) and keep the overlap with every
// earlier disc shallower than d_tolerable (tolerable distance control).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "iad/channel.hpp"
#include "iad/errors.hpp"
#include "iad/geometry.hpp"
#include "iad/radio.hpp"
#include "iad/types.hpp"

namespace iad {

struct IadParams {
  std::size_t k = 25;
  std::size_t n_min = 10;
  double c_max_bps = 1.5e8;
  double c_min_bps = 3e6;
  double d_tolerable = 60.0;
  std::size_t m = 10;
  // Seed GUs tried per placement before giving up; 0 means every unlabeled GU.
  std::size_t max_seed_attempts = 0;
  double rho = 0.0;  // accepted for interface parity, not used

  std::size_t n_max() const {
    return static_cast<std::size_t>(std::floor(c_max_bps / c_min_bps));
  }

  void validate() const {
    if (k < 1) throw ConfigError("iad: k must be at least 1");
    if (m < 1) throw ConfigError("iad: m must be at least 1");
    if (!(c_max_bps > 0.0) || !(c_min_bps > 0.0))
      throw ConfigError("iad: c_max and c_min must be positive");
    if (n_max() < n_min) throw ConfigError("iad: floor(c_max / c_min) is below n_min");
    if (!(d_tolerable >= 0.0)) throw ConfigError("iad: d_tolerable must be non-negative");
  }
};

struct AllocationResult {
  std::size_t count = 0;
  std::vector<double> radii;          // ascending
  std::vector<std::size_t> members;   // GU indices, same order as radii

  double max_radius() const { return radii.empty() ? 0.0 : radii.back(); }
};

// Unlabeled GUs within r_max of the candidate center, nearest first, truncated
// to the nearest n_max. Equal distances keep index order.
inline AllocationResult allocation(std::span<const Point2> gus, const Association& labels,
                                   const Point2& center, double r_max, std::size_t n_max) {
  std::vector<std::pair<double, std::size_t>> hits;
  for (std::size_t i = 0; i < gus.size(); ++i) {
    if (labels[i]) continue;
    const double d = distance(center, gus[i]);
    if (d <= r_max) hits.emplace_back(d, i);
  }
  std::sort(hits.begin(), hits.end());
  if (hits.size() > n_max) hits.resize(n_max);
  AllocationResult out;
  out.count = hits.size();
  out.radii.reserve(hits.size());
  out.members.reserve(hits.size());
  for (const auto& [d, i] : hits) {
    out.radii.push_back(d);
    out.members.push_back(i);
  }
  return out;
}

using Triple = std::array<std::size_t, 3>;

struct SeedCandidate {
  Triple gus;
  Circle circumcircle;
};

// Circumcircle of `seed` and its two nearest unlabeled neighbours (lowest index on ties).
// Throws DegenerateGeometryError for collinear triples and returns nullopt when
// fewer than two other unlabeled GUs exist.
inline std::optional<SeedCandidate> candidate_from_seed(std::span<const Point2> gus,
                                                        const Association& labels,
                                                        std::size_t seed) {
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  std::size_t n1 = kNone, n2 = kNone;
  double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
  for (std::size_t i = 0; i < gus.size(); ++i) {
    if (i == seed || labels[i]) continue;
    const double d = squared_distance(gus[seed], gus[i]);
    if (d < d1) {
      n2 = n1;
      d2 = d1;
      n1 = i;
      d1 = d;
    } else if (d < d2) {
      n2 = i;
      d2 = d;
    }
  }
  if (n2 == kNone) return std::nullopt;
  return SeedCandidate{{seed, n1, n2}, circumcircle(gus[seed], gus[n1], gus[n2])};
}

// Draws a uniformly random seed among unlabeled GUs not yet in `tried`, marking it
// tried. Collinear seed triples are skipped. nullopt means the seed pool is exhausted.
template <class Rng>
std::optional<SeedCandidate> initial_candidate(std::span<const Point2> gus,
                                               const Association& labels, Rng& rng,
                                               std::vector<bool>& tried,
                                               std::size_t max_attempts) {
  std::size_t unlabeled = 0;
  for (const auto& l : labels)
    if (!l) ++unlabeled;
  if (unlabeled < 3) return std::nullopt;

  std::vector<std::size_t> pool;
  std::size_t attempts = 0;
  while (attempts < max_attempts) {
    pool.clear();
    for (std::size_t i = 0; i < gus.size(); ++i)
      if (!labels[i] && !tried[i]) pool.push_back(i);
    if (pool.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const std::size_t seed = pool[pick(rng)];
    tried[seed] = true;
    ++attempts;
    try {
      return candidate_from_seed(gus, labels, seed);
    } catch (const DegenerateGeometryError&) {
      // resample
    }
  }
  return std::nullopt;
}

template <class Rng>
std::optional<SeedCandidate> initial_candidate(std::span<const Point2> gus,
                                               const Association& labels, Rng& rng) {
  std::vector<bool> tried(gus.size(), false);
  return initial_candidate(gus, labels, rng, tried, gus.size());
}

// A stored candidate: circumcenter with the radius of its allocation, max(R').
struct StoredCandidate {
  Circle disc;
  Triple gus;
  AllocationResult alloc;
};

struct IadContext {
  std::span<const Point2> gus;
  const Association& labels;
  std::span<const Circle> deployed;
  double r_max;
  std::size_t n_min;
  std::size_t n_max;
  FilterParams filter;
};

// Allocates around `center` and applies the association-count and
// tolerable-distance gates; nullopt when either fails.
inline std::optional<StoredCandidate> gate_candidate(const IadContext& ctx, const Point2& center,
                                                     const Triple& triple) {
  auto alloc = allocation(ctx.gus, ctx.labels, center, ctx.r_max, ctx.n_max);
  if (alloc.count < ctx.n_min) return std::nullopt;
  const Circle disc{center, std::min(ctx.r_max, std::max(alloc.max_radius(), kMinCoverageRadius))};
  if (!ctx.deployed.empty() && !all_pairs_admissible(disc, ctx.deployed, ctx.filter))
    return std::nullopt;
  return StoredCandidate{disc, triple, std::move(alloc)};
}

// Walks the candidate location m times: adds the unlabeled GU nearest to the
// current candidate, scores the four 3-subsets of the resulting quadruple, keeps
// those passing both gates, and moves to the last kept one.
inline std::vector<StoredCandidate> expand_candidates(const IadContext& ctx, Triple triple,
                                                      Circle l_cand, std::size_t m) {
  std::vector<StoredCandidate> kept;
  for (std::size_t iter = 0; iter < m; ++iter) {
    std::size_t e4 = std::numeric_limits<std::size_t>::max();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ctx.gus.size(); ++i) {
      if (ctx.labels[i] || i == triple[0] || i == triple[1] || i == triple[2]) continue;
      const double d = squared_distance(l_cand.center, ctx.gus[i]);
      if (d < best) {
        best = d;
        e4 = i;
      }
    }
    if (e4 == std::numeric_limits<std::size_t>::max()) break;

    const std::array<Triple, 4> subsets{{{triple[0], triple[1], triple[2]},
                                         {triple[0], triple[1], e4},
                                         {triple[0], triple[2], e4},
                                         {triple[1], triple[2], e4}}};
    Triple next = triple;
    Circle next_cand = l_cand;
    for (const Triple& s : subsets) {
      Circle cc;
      try {
        cc = circumcircle(ctx.gus[s[0]], ctx.gus[s[1]], ctx.gus[s[2]]);
      } catch (const DegenerateGeometryError&) {
        continue;
      }
      if (auto c = gate_candidate(ctx, cc.center, s)) {
        kept.push_back(std::move(*c));
        next = s;
        next_cand = cc;
      }
    }
    // An unchanged candidate would repeat this iteration exactly.
    if (next == triple) break;
    triple = next;
    l_cand = next_cand;
  }
  return kept;
}

// Sequential placement until every GU is labeled, k UAVs are placed, or no
// untried seed GU yields an admissible candidate.
inline Deployment deploy(std::span<const Point2> gus, const CoverageProfile& profile,
                         const IadParams& params, std::uint64_t seed) {
  params.validate();
  Deployment dep;
  dep.seed = seed;
  dep.association.assign(gus.size(), std::nullopt);
  if (gus.size() < params.n_min) return dep;

  std::mt19937_64 rng(seed);
  std::vector<Circle> deployed;
  const std::size_t n_max = params.n_max();

  while (dep.placements.size() < params.k) {
    const auto unlabeled = static_cast<std::size_t>(
        std::count(dep.association.begin(), dep.association.end(), std::nullopt));
    if (unlabeled == 0 || unlabeled < params.n_min) break;

    const IadContext ctx{gus, dep.association, deployed, profile.r_max,
                         params.n_min, n_max, FilterParams{params.d_tolerable}};
    const std::size_t max_attempts =
        params.max_seed_attempts == 0 ? unlabeled : params.max_seed_attempts;
    std::vector<bool> tried(gus.size(), false);

    std::optional<StoredCandidate> winner;
    while (!winner) {
      auto init = initial_candidate(gus, dep.association, rng, tried, max_attempts);
      if (!init) break;
      auto first = gate_candidate(ctx, init->circumcircle.center, init->gus);
      if (!first) continue;

      std::vector<StoredCandidate> stored;
      stored.push_back(std::move(*first));
      auto more = expand_candidates(ctx, init->gus, init->circumcircle, params.m);
      std::move(more.begin(), more.end(), std::back_inserter(stored));

      std::size_t best = 0;
      for (std::size_t c = 1; c < stored.size(); ++c)
        if (stored[c].disc.radius > stored[best].disc.radius) best = c;
      winner = std::move(stored[best]);
    }
    if (!winner) break;

    const std::size_t j = dep.placements.size();
    const double r = winner->disc.radius;
    dep.placements.push_back({winner->disc.center.x, winner->disc.center.y,
                              profile.altitude_for(r), r});
    deployed.push_back(winner->disc);
    for (std::size_t i : winner->alloc.members) dep.association[i] = j;
  }
  return dep;
}

inline Deployment deploy(const std::vector<GroundUser>& gus, const CoverageProfile& profile,
                         const IadParams& params, std::uint64_t seed) {
  const auto pts = positions(gus);
  return deploy(std::span<const Point2>(pts), profile, params, seed);
}

inline double satisfaction_of(const Deployment& dep, std::span<const Point2> gus,
                              const ChannelParams& ch, const RadioParams& radio) {
  return evaluate_deployment(gus, dep.placements, dep.association, ch, radio).satisfaction;
}

}  // namespace iad

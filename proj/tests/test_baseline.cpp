#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "iad/baseline.hpp"
#include "iad/scenario.hpp"

using namespace iad;

namespace {

const CoverageProfile& profile() {
  static const CoverageProfile p = optimal_elevation_angle(119.0, 120.0, ChannelParams::dense_urban());
  return p;
}

TEST(Kmeanspp, SingleClusterIsTheMean) {
  const std::vector<Point2> g{{0, 0}, {4, 0}, {0, 4}, {4, 4}};
  const auto cl = kmeanspp(g, {1, 100, 1e-9, 3});
  ASSERT_EQ(cl.centroids.size(), 1u);
  EXPECT_NEAR(cl.centroids[0].x, 2.0, 1e-12);
  EXPECT_NEAR(cl.centroids[0].y, 2.0, 1e-12);
}

TEST(Kmeanspp, TwoObviousClusters) {
  std::vector<Point2> g;
  for (int i = 0; i < 10; ++i) {
    g.push_back({static_cast<double>(i % 3), static_cast<double>(i / 3)});
    g.push_back({500.0 + i % 3, 500.0 + i / 3});
  }
  const auto cl = kmeanspp(g, {2, 100, 1e-9, 11});
  for (std::size_t i = 0; i < g.size(); i += 2) {
    EXPECT_EQ(cl.assignment[i], cl.assignment[0]);
    EXPECT_NE(cl.assignment[i + 1], cl.assignment[0]);
  }
}

TEST(Kmeanspp, TooFewPoints) {
  const std::vector<Point2> g{{0, 0}, {1, 1}};
  EXPECT_THROW(kmeanspp(g, {3, 100, 1e-3, 1}), std::invalid_argument);
}

TEST(Kmeanspp, Deterministic) {
  ScenarioSpec s;
  s.seed = 6;
  const auto g = positions(generate(s));
  const auto a = kmeanspp(g, {25, 100, 1e-3, 9});
  const auto b = kmeanspp(g, {25, 100, 1e-3, 9});
  EXPECT_EQ(a.assignment, b.assignment);
  for (std::size_t c = 0; c < a.centroids.size(); ++c) EXPECT_EQ(a.centroids[c], b.centroids[c]);
}

TEST(Kmeanspp, ObjectiveNonIncreasingInIterations) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ScenarioSpec s;
    s.seed = seed;
    s.n_users = 300;
    const auto g = positions(generate(s));
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t it = 1; it <= 12; ++it) {
      const auto cl = kmeanspp(g, {25, it, 1e-12, seed});
      const double w = within_cluster_ss(g, cl);
      EXPECT_LE(w, prev * (1.0 + 1e-12)) << "seed " << seed << " iters " << it;
      prev = w;
    }
  }
}

TEST(Kmeanspp, AssignmentIsNearestCentroid) {
  ScenarioSpec s;
  s.seed = 2;
  const auto g = positions(generate(s));
  const auto cl = kmeanspp(g, {25, 200, 1e-12, 2});
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(cl.assignment[i], nearest_centroid(g[i], cl.centroids));
}

TEST(KmeansppDeploy, RespectsCoverageAndCapacity) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ScenarioSpec s;
    s.seed = seed;
    s.n_users = 800;
    const auto g = positions(generate(s));
    const auto d = kmeanspp_deploy(g, profile(), 50, {25, 100, 1e-3, seed});
    EXPECT_LE(d.placements.size(), 25u);
    const auto loads = d.loads();
    for (std::size_t j = 0; j < d.placements.size(); ++j) {
      EXPECT_LE(loads[j], 50u);
      EXPECT_LE(d.placements[j].radius, profile().r_max);
      EXPECT_GE(d.placements[j].radius, kMinCoverageRadius);
    }
    for (std::size_t i = 0; i < g.size(); ++i)
      if (d.association[i]) {
        EXPECT_LE(distance(g[i], d.placements[*d.association[i]].center()),
                  d.placements[*d.association[i]].radius + 1e-9);
      }
  }
}

TEST(KmeansppDeploy, CapKeepsNearest) {
  std::vector<Point2> g;
  for (int i = 1; i <= 8; ++i) g.push_back({static_cast<double>(i), 0.0});
  g.push_back({-36.0, 0.0});
  const auto d = kmeanspp_deploy(g, profile(), 5, {1, 100, 1e-9, 1});
  ASSERT_EQ(d.placements.size(), 1u);
  // Centroid is at x = 0; the five nearest members are x = 1..5.
  for (int i = 0; i < 5; ++i) EXPECT_TRUE(d.association[i].has_value());
  for (int i = 5; i < 9; ++i) EXPECT_FALSE(d.association[i].has_value());
}

}  // namespace

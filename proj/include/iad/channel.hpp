#pragma once

// Air-to-ground propagation: elevation-dependent LoS probability, LoS/NLoS
// free-space loss with mean excess terms, and the coverage profile derived
// from an allowable path loss.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "iad/errors.hpp"

namespace iad {

inline constexpr double kDegPerRad = 180.0 / std::numbers::pi;

inline double deg_to_rad(double deg) { return deg / kDegPerRad; }
inline double rad_to_deg(double rad) { return rad * kDegPerRad; }

struct ChannelParams {
  double a = 12.08;
  double b = 0.11;
  double eta_los_db = 1.6;
  double eta_nlos_db = 23.0;
  double carrier_hz = 2.4e9;
  double light_speed_mps = 3.0e8;

  // Dense-urban environment constants.
  static ChannelParams dense_urban() { return {}; }

  void validate() const {
    if (!(a > 0.0) || !(b > 0.0))
      throw ConfigError("channel: a and b must be positive");
    if (!(eta_los_db >= 0.0) || !(eta_nlos_db >= eta_los_db))
      throw ConfigError("channel: require 0 <= eta_los <= eta_nlos");
    if (!(carrier_hz > 0.0) || !(light_speed_mps > 0.0))
      throw ConfigError("channel: carrier frequency and light speed must be positive");
  }
};

// Geometry of one ground-to-UAV link.
struct LinkGeometry {
  double horizontal_m = 0.0;
  double altitude_m = 0.0;
  double slant_m = 0.0;
  double elevation_deg = 0.0;

  static LinkGeometry from(double horizontal_m, double altitude_m) {
    if (!(horizontal_m >= 0.0) || !(altitude_m >= 0.0))
      throw DomainError("link geometry: distances must be non-negative");
    LinkGeometry g;
    g.horizontal_m = horizontal_m;
    g.altitude_m = altitude_m;
    g.slant_m = std::hypot(horizontal_m, altitude_m);
    g.elevation_deg = g.slant_m > 0.0 ? rad_to_deg(std::asin(altitude_m / g.slant_m)) : 0.0;
    return g;
  }
};

enum class Propagation { LoS, NLoS };

inline double los_probability(double elevation_deg, const ChannelParams& p) {
  if (!(elevation_deg > 0.0 && elevation_deg <= 90.0))
    throw DomainError("los_probability: elevation must lie in (0, 90] degrees");
  return 1.0 / (1.0 + p.a * std::exp(-p.b * (elevation_deg - p.a)));
}

// 20 log10(4 pi f d / c); the shared free-space part of both propagation modes.
inline double free_space_loss_db(double slant_m, const ChannelParams& p) {
  if (!(slant_m > 0.0)) throw DomainError("path loss: slant distance must be positive");
  return 20.0 * std::log10(4.0 * std::numbers::pi * p.carrier_hz * slant_m / p.light_speed_mps);
}

inline double path_loss(const LinkGeometry& link, const ChannelParams& p, Propagation mode) {
  const double excess = mode == Propagation::LoS ? p.eta_los_db : p.eta_nlos_db;
  return free_space_loss_db(link.slant_m, p) + excess;
}

// Mean excess loss at a given elevation: P_LoS * eta_LoS + (1 - P_LoS) * eta_NLoS.
inline double mean_excess_loss_db(double elevation_deg, const ChannelParams& p) {
  const double plos = los_probability(elevation_deg, p);
  return plos * p.eta_los_db + (1.0 - plos) * p.eta_nlos_db;
}

inline double average_path_loss(const LinkGeometry& link, const ChannelParams& p) {
  const double plos = los_probability(link.elevation_deg, p);
  return plos * path_loss(link, p, Propagation::LoS) +
         (1.0 - plos) * path_loss(link, p, Propagation::NLoS);
}

inline double average_path_loss(double horizontal_m, double altitude_m, const ChannelParams& p) {
  return average_path_loss(LinkGeometry::from(horizontal_m, altitude_m), p);
}

// Horizontal radius along the ray of elevation theta at which the averaged
// loss equals l_allow_db. Bisection on r with h = r tan(theta).
inline double radius_at_loss(double elevation_deg, double l_allow_db, const ChannelParams& p) {
  if (!(elevation_deg > 0.0 && elevation_deg < 90.0))
    throw DomainError("radius_at_loss: elevation must lie in (0, 90) degrees");
  const double tan_t = std::tan(deg_to_rad(elevation_deg));
  auto loss = [&](double r) { return average_path_loss(r, r * tan_t, p); };

  double lo = 0.0;
  double hi = 1.0;
  while (loss(hi) < l_allow_db) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw InfeasibleError("radius_at_loss: allowable loss is unreachable");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (loss(mid) < l_allow_db ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct CoverageProfile {
  double theta_opt_deg = 0.0;
  double r_max = 0.0;
  double h_max = 0.0;
  double l_allow_db = 0.0;
  // Radius at which the averaged loss along the optimal ray reaches l_allow.
  double loss_limited_radius = 0.0;
  // Averaged loss at the coverage edge (r_max, h_max); never above l_allow.
  double edge_loss_db = 0.0;

  double tan_theta() const { return std::tan(deg_to_rad(theta_opt_deg)); }
  double altitude_for(double radius) const { return std::min(h_max, radius * tan_theta()); }
};

// Maximizes the loss-limited coverage radius over the elevation angle: a 1 degree
// scan brackets the optimum, golden-section refines it. The altitude cap then fixes
// r_max = h_max / tan(theta_opt).
inline CoverageProfile optimal_elevation_angle(double l_allow_db, double h_max,
                                               const ChannelParams& p) {
  p.validate();
  if (!(h_max > 0.0)) throw DomainError("optimal_elevation_angle: h_max must be positive");
  if (!std::isfinite(l_allow_db))
    throw DomainError("optimal_elevation_angle: l_allow must be finite");

  auto radius = [&](double theta) { return radius_at_loss(theta, l_allow_db, p); };

  int best_deg = 1;
  double best_r = radius(1.0);
  for (int deg = 2; deg <= 89; ++deg) {
    const double r = radius(deg);
    if (r > best_r) {
      best_r = r;
      best_deg = deg;
    }
  }

  constexpr double kInvPhi = 0.6180339887498949;
  double lo = std::max(1e-6, best_deg - 1.0);
  double hi = std::min(90.0 - 1e-6, best_deg + 1.0);
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = radius(x1);
  double f2 = radius(x2);
  while (hi - lo > 1e-7) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = radius(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = radius(x1);
    }
  }
  double theta = 0.5 * (lo + hi);
  double r_theta = radius(theta);
  if (r_theta < best_r) {
    theta = best_deg;
    r_theta = best_r;
  }

  CoverageProfile prof;
  prof.theta_opt_deg = theta;
  prof.h_max = h_max;
  prof.l_allow_db = l_allow_db;
  prof.loss_limited_radius = r_theta;
  prof.r_max = h_max / std::tan(deg_to_rad(theta));
  if (prof.r_max > r_theta)
    throw InfeasibleError("optimal_elevation_angle: l_allow " + std::to_string(l_allow_db) +
                          " dB cannot be met at the altitude cap");
  prof.edge_loss_db = average_path_loss(prof.r_max, h_max, p);
  return prof;
}

}  // namespace iad

#pragma once

// Downlink SINR, Shannon rate under an equal bandwidth split, and the
// user-satisfaction objective with constraint-violation flags.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "iad/channel.hpp"
#include "iad/errors.hpp"
#include "iad/geometry.hpp"
#include "iad/types.hpp"

namespace iad {

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

struct RadioParams {
  double p_tx_dbm = 20.0;
  double total_bandwidth_hz = 2e7;
  double noise_psd_dbm_hz = -174.0;
  double sinr_threshold_db = 5.0;
  double backhaul_capacity_bps = 1.5e8;
  double min_rate_bps = 3e6;
  std::vector<double> rate_levels_bps = {1e6, 2e6, 3e6, 4e6, 5e6, 6e6};

  // floor(C_max / c_min): most GUs one UAV may carry at the target rate.
  std::size_t n_max() const {
    return static_cast<std::size_t>(std::floor(backhaul_capacity_bps / min_rate_bps));
  }

  // Rate at exactly the SINR threshold for a GU holding a 1/n_max bandwidth share.
  double threshold_rate_bps() const {
    const double share = total_bandwidth_hz / static_cast<double>(std::max<std::size_t>(1, n_max()));
    return share * std::log2(1.0 + db_to_linear(sinr_threshold_db));
  }

  void validate() const {
    if (!(total_bandwidth_hz > 0.0) || !(backhaul_capacity_bps > 0.0) || !(min_rate_bps > 0.0))
      throw ConfigError("radio: bandwidth, backhaul capacity and minimum rate must be positive");
    if (!std::isfinite(p_tx_dbm) || !std::isfinite(noise_psd_dbm_hz))
      throw ConfigError("radio: transmit power and noise density must be finite");
    if (std::find(rate_levels_bps.begin(), rate_levels_bps.end(), min_rate_bps) ==
        rate_levels_bps.end())
      throw ConfigError("radio: min_rate_bps " + std::to_string(min_rate_bps) +
                        " is not one of rate_levels_bps");
    if (n_max() < 1) throw ConfigError("radio: backhaul capacity is below the minimum rate");
    if (min_rate_bps < threshold_rate_bps())
      throw ConfigError("radio: min_rate_bps is below the SINR-threshold rate");
  }
};

inline double received_power_mw(const Point2& gu, const UavPlacement& uav, const ChannelParams& ch,
                                double p_tx_mw) {
  const double loss = average_path_loss(distance(gu, uav.center()), uav.altitude, ch);
  return p_tx_mw * std::pow(10.0, -loss / 10.0);
}

// Sum of received power from every non-serving UAV whose disc horizontally
// contains the GU. Zero when the GU is outside its serving disc.
inline double interference_power(const Point2& gu, std::size_t serving,
                                 std::span<const UavPlacement> placements, const ChannelParams& ch,
                                 const RadioParams& radio) {
  if (serving >= placements.size())
    throw std::out_of_range("interference_power: serving index out of range");
  if (distance(gu, placements[serving].center()) > placements[serving].radius) return 0.0;
  const double p_tx_mw = dbm_to_mw(radio.p_tx_dbm);
  double sum = 0.0;
  for (std::size_t j = 0; j < placements.size(); ++j) {
    if (j == serving) continue;
    if (distance(gu, placements[j].center()) <= placements[j].radius)
      sum += received_power_mw(gu, placements[j], ch, p_tx_mw);
  }
  return sum;
}

struct LinkAssessment {
  std::size_t serving_uav = 0;
  double sinr_linear = 0.0;
  double allocated_bandwidth_hz = 0.0;
  double rate_bps = 0.0;
  double interference_mw = 0.0;
  bool satisfied = false;
};

inline LinkAssessment assess_link(const Point2& gu, std::size_t serving,
                                  std::span<const UavPlacement> placements,
                                  const ChannelParams& ch, const RadioParams& radio,
                                  std::size_t load) {
  if (load < 1) throw std::invalid_argument("assess_link: load must be at least 1");
  LinkAssessment la;
  la.serving_uav = serving;
  la.interference_mw = interference_power(gu, serving, placements, ch, radio);
  la.allocated_bandwidth_hz = radio.total_bandwidth_hz / static_cast<double>(load);
  const double noise_mw = dbm_to_mw(radio.noise_psd_dbm_hz) * la.allocated_bandwidth_hz;
  const double signal_mw = received_power_mw(gu, placements[serving], ch, dbm_to_mw(radio.p_tx_dbm));
  la.sinr_linear = signal_mw / (la.interference_mw + noise_mw);
  la.rate_bps = la.allocated_bandwidth_hz * std::log2(1.0 + la.sinr_linear);
  la.satisfied = la.rate_bps >= radio.min_rate_bps &&
                 distance(gu, placements[serving].center()) <= placements[serving].radius;
  return la;
}

enum class ConstraintKind { LoadBelowMin, LoadAboveMax, BackhaulExceeded, OverlapViolation };

inline const char* to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::LoadBelowMin: return "load_below_min";
    case ConstraintKind::LoadAboveMax: return "load_above_max";
    case ConstraintKind::BackhaulExceeded: return "backhaul_exceeded";
    case ConstraintKind::OverlapViolation: return "overlap_violation";
  }
  return "unknown";
}

struct ConstraintFlag {
  ConstraintKind kind;
  std::size_t uav = 0;
  std::size_t other_uav = 0;  // only meaningful for OverlapViolation

  friend bool operator==(const ConstraintFlag&, const ConstraintFlag&) = default;
};

struct EvaluationOptions {
  std::size_t n_min = 1;
  // When set, every UAV pair failing the tolerable-distance filter is flagged.
  std::optional<double> d_tolerable;
};

struct EvaluationReport {
  std::vector<std::optional<LinkAssessment>> per_gu;
  std::vector<std::size_t> per_uav_load;
  std::vector<double> per_uav_sum_rate_bps;
  double satisfaction = 0.0;
  std::vector<ConstraintFlag> flags;

  std::size_t satisfied_count() const {
    return static_cast<std::size_t>(std::count_if(per_gu.begin(), per_gu.end(), [](const auto& a) {
      return a && a->satisfied;
    }));
  }
};

inline EvaluationReport evaluate_deployment(std::span<const Point2> gus,
                                            std::span<const UavPlacement> placements,
                                            const Association& association,
                                            const ChannelParams& ch, const RadioParams& radio,
                                            const EvaluationOptions& opts = {}) {
  if (association.size() != gus.size())
    throw std::invalid_argument("evaluate_deployment: association size does not match GU count");
  EvaluationReport rep;
  rep.per_uav_load.assign(placements.size(), 0);
  rep.per_uav_sum_rate_bps.assign(placements.size(), 0.0);
  for (std::size_t i = 0; i < association.size(); ++i) {
    if (!association[i]) continue;
    if (*association[i] >= placements.size())
      throw std::out_of_range("evaluate_deployment: GU " + std::to_string(i) +
                              " references missing UAV " + std::to_string(*association[i]));
    ++rep.per_uav_load[*association[i]];
  }

  rep.per_gu.resize(gus.size());
  std::size_t satisfied = 0;
  for (std::size_t i = 0; i < gus.size(); ++i) {
    if (!association[i]) continue;
    const std::size_t j = *association[i];
    auto la = assess_link(gus[i], j, placements, ch, radio, rep.per_uav_load[j]);
    if (la.satisfied) {
      ++satisfied;
      rep.per_uav_sum_rate_bps[j] += la.rate_bps;
    }
    rep.per_gu[i] = la;
  }
  rep.satisfaction =
      gus.empty() ? 0.0 : static_cast<double>(satisfied) / static_cast<double>(gus.size());

  const std::size_t n_max = radio.n_max();
  for (std::size_t j = 0; j < placements.size(); ++j) {
    if (rep.per_uav_load[j] < opts.n_min) rep.flags.push_back({ConstraintKind::LoadBelowMin, j, j});
    if (rep.per_uav_load[j] > n_max) rep.flags.push_back({ConstraintKind::LoadAboveMax, j, j});
    if (rep.per_uav_sum_rate_bps[j] > radio.backhaul_capacity_bps)
      rep.flags.push_back({ConstraintKind::BackhaulExceeded, j, j});
  }
  if (opts.d_tolerable) {
    const FilterParams fp{*opts.d_tolerable};
    for (std::size_t j = 0; j < placements.size(); ++j)
      for (std::size_t q = j + 1; q < placements.size(); ++q)
        if (!overlap_filter(placements[j].disc(), placements[q].disc(), fp))
          rep.flags.push_back({ConstraintKind::OverlapViolation, j, q});
  }
  return rep;
}

}  // namespace iad

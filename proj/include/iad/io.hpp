#pragma once

// JSON shapes for Deployment and EvaluationReport.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "iad/errors.hpp"
#include "iad/radio.hpp"
#include "iad/scenario.hpp"
#include "iad/types.hpp"

namespace iad {

inline nlohmann::json to_json(const Deployment& d) {
  nlohmann::json placements = nlohmann::json::array();
  for (const auto& p : d.placements)
    placements.push_back({{"x", p.x}, {"y", p.y}, {"altitude", p.altitude}, {"radius", p.radius}});
  nlohmann::json assoc = nlohmann::json::array();
  for (const auto& a : d.association) assoc.push_back(a ? nlohmann::json(*a) : nlohmann::json(nullptr));
  return {{"placements", std::move(placements)}, {"association", std::move(assoc)}, {"seed", d.seed}};
}

inline Deployment deployment_from_json(const nlohmann::json& j) {
  try {
    Deployment d;
    d.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& p : j.at("placements"))
      d.placements.push_back({p.at("x").get<double>(), p.at("y").get<double>(),
                              p.at("altitude").get<double>(), p.at("radius").get<double>()});
    for (const auto& a : j.at("association")) {
      if (a.is_null()) d.association.emplace_back(std::nullopt);
      else d.association.emplace_back(a.get<std::size_t>());
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("deployment: ") + e.what(), 0, 0);
  }
}

inline Deployment deployment_from_string(const std::string& text) {
  return deployment_from_json(detail::parse_json_text(text));
}

inline nlohmann::json to_json(const LinkAssessment& la) {
  return {{"serving_uav", la.serving_uav},
          {"sinr_linear", la.sinr_linear},
          {"allocated_bandwidth_hz", la.allocated_bandwidth_hz},
          {"rate_bps", la.rate_bps},
          {"interference_mw", la.interference_mw},
          {"satisfied", la.satisfied}};
}

inline nlohmann::json to_json(const EvaluationReport& r) {
  nlohmann::json per_gu = nlohmann::json::array();
  for (const auto& a : r.per_gu) per_gu.push_back(a ? to_json(*a) : nlohmann::json(nullptr));
  nlohmann::json flags = nlohmann::json::array();
  for (const auto& f : r.flags) {
    nlohmann::json fj = {{"kind", to_string(f.kind)}, {"uav", f.uav}};
    if (f.kind == ConstraintKind::OverlapViolation) fj["other_uav"] = f.other_uav;
    flags.push_back(std::move(fj));
  }
  return {{"per_gu", std::move(per_gu)},
          {"per_uav_load", r.per_uav_load},
          {"per_uav_sum_rate_bps", r.per_uav_sum_rate_bps},
          {"satisfaction", r.satisfaction},
          {"flags", std::move(flags)}};
}

}  // namespace iad

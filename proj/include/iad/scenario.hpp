#pragma once

// Heterogeneous GU layouts: Gaussian hotspots of random count, position and
// spread over a uniform background, plus the versioned JSON scenario file.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "iad/errors.hpp"
#include "iad/types.hpp"

namespace iad {

struct ScenarioSpec {
  double width = 600.0;
  double height = 600.0;
  std::size_t n_users = 600;
  std::array<std::size_t, 2> hotspot_count_range{3, 8};
  std::array<double, 2> hotspot_sigma_range_m{20.0, 60.0};
  double background_fraction = 0.2;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(width > 0.0) || !(height > 0.0)) throw ConfigError("scenario: area must be positive");
    if (n_users < 1) throw ConfigError("scenario: n_users must be at least 1");
    if (hotspot_count_range[0] > hotspot_count_range[1])
      throw ConfigError("scenario: hotspot_count_range is empty");
    if (!(hotspot_sigma_range_m[0] > 0.0) || hotspot_sigma_range_m[0] > hotspot_sigma_range_m[1])
      throw ConfigError("scenario: hotspot_sigma_range_m must be positive and ordered");
    if (!(background_fraction >= 0.0 && background_fraction <= 1.0))
      throw ConfigError("scenario: background_fraction must lie in [0, 1]");
    if (background_fraction < 1.0 && hotspot_count_range[1] < 1)
      throw ConfigError("scenario: hotspot users requested but no hotspots allowed");
  }

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

inline std::vector<GroundUser> generate(const ScenarioSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> ux(0.0, spec.width);
  std::uniform_real_distribution<double> uy(0.0, spec.height);

  const auto n_background = static_cast<std::size_t>(
      std::llround(spec.background_fraction * static_cast<double>(spec.n_users)));
  const std::size_t n_hot = spec.n_users - n_background;

  struct Hotspot {
    double cx, cy, sigma;
  };
  std::vector<Hotspot> hotspots;
  if (n_hot > 0) {
    std::uniform_int_distribution<std::size_t> count(std::max<std::size_t>(1, spec.hotspot_count_range[0]),
                                                     spec.hotspot_count_range[1]);
    std::uniform_real_distribution<double> sig(spec.hotspot_sigma_range_m[0],
                                               spec.hotspot_sigma_range_m[1]);
    const std::size_t h = count(rng);
    for (std::size_t i = 0; i < h; ++i) {
      const double cx = ux(rng);
      const double cy = uy(rng);
      hotspots.push_back({cx, cy, sig(rng)});
    }
  }

  std::vector<GroundUser> out;
  out.reserve(spec.n_users);
  for (std::size_t i = 0; i < n_background; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    out.push_back({x, y, std::nullopt});
  }
  if (!hotspots.empty()) {
    std::uniform_int_distribution<std::size_t> which(0, hotspots.size() - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < n_hot; ++i) {
      const Hotspot& hs = hotspots[which(rng)];
      double x, y;
      do {  // redraw samples that fall outside the area
        x = hs.cx + hs.sigma * gauss(rng);
        y = hs.cy + hs.sigma * gauss(rng);
      } while (x < 0.0 || x > spec.width || y < 0.0 || y > spec.height);
      out.push_back({x, y, std::nullopt});
    }
  }
  return out;
}

struct Scenario {
  ScenarioSpec spec;
  std::vector<GroundUser> users;
};

inline constexpr int kScenarioFormatVersion = 1;

inline nlohmann::json spec_to_json(const ScenarioSpec& s) {
  return {{"width", s.width},
          {"height", s.height},
          {"n_users", s.n_users},
          {"hotspot_count_range", s.hotspot_count_range},
          {"hotspot_sigma_range_m", s.hotspot_sigma_range_m},
          {"background_fraction", s.background_fraction},
          {"seed", s.seed}};
}

// Reads known keys over the defaults; unknown keys are rejected.
inline ScenarioSpec spec_from_json(const nlohmann::json& j, ScenarioSpec s = {}) {
  if (!j.is_object()) throw ConfigError("scenario spec must be a JSON object");
  for (const auto& [key, val] : j.items()) {
    if (key == "width") s.width = val.get<double>();
    else if (key == "height") s.height = val.get<double>();
    else if (key == "n_users") s.n_users = val.get<std::size_t>();
    else if (key == "hotspot_count_range") s.hotspot_count_range = val.get<std::array<std::size_t, 2>>();
    else if (key == "hotspot_sigma_range_m") s.hotspot_sigma_range_m = val.get<std::array<double, 2>>();
    else if (key == "background_fraction") s.background_fraction = val.get<double>();
    else if (key == "seed") s.seed = val.get<std::uint64_t>();
    else throw ConfigError("scenario spec: unknown key '" + key + "'");
  }
  return s;
}

inline std::string scenario_to_string(const Scenario& sc) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& u : sc.users) pts.push_back({u.x, u.y});
  nlohmann::json doc = {{"format_version", kScenarioFormatVersion},
                        {"spec", spec_to_json(sc.spec)},
                        {"points", std::move(pts)}};
  return doc.dump(1) + "\n";
}

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Parses JSON text, mapping syntax errors to ParseError with a line/column.
inline nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(e.what(), line, col);
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

inline Scenario scenario_from_string(const std::string& text) {
  const nlohmann::json doc = detail::parse_json_text(text);
  // Structural problems have no single source position; they report line 0.
  auto fail = [](const std::string& msg) -> ParseError { return ParseError("scenario: " + msg, 0, 0); };
  try {
    if (!doc.is_object()) throw fail("document must be an object");
    if (!doc.contains("format_version") || doc.at("format_version").get<int>() != kScenarioFormatVersion)
      throw fail("unsupported or missing format_version");
    if (!doc.contains("spec") || !doc.contains("points")) throw fail("missing spec or points");
    Scenario sc;
    sc.spec = spec_from_json(doc.at("spec"));
    const auto& pts = doc.at("points");
    if (!pts.is_array() || pts.empty()) throw fail("points must be a non-empty array");
    sc.users.reserve(pts.size());
    for (const auto& p : pts) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        throw fail("each point must be [x, y]");
      sc.users.push_back({p[0].get<double>(), p[1].get<double>(), std::nullopt});
    }
    return sc;
  } catch (const nlohmann::json::exception& e) {
    throw fail(e.what());
  } catch (const ConfigError& e) {
    throw fail(e.what());
  }
}

inline void save_scenario(const Scenario& sc, const std::filesystem::path& path) {
  const std::string text = scenario_to_string(sc);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_string(detail::read_file(path));
}

}  // namespace iad

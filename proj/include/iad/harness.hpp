#pragma once

// Monte Carlo sweeps over d_tolerable, N or c_min with paired trials: trial t
// uses scenario seed base_seed + t for every method and sweep value.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "iad/baseline.hpp"
#include "iad/channel.hpp"
#include "iad/deploy.hpp"
#include "iad/errors.hpp"
#include "iad/radio.hpp"
#include "iad/scenario.hpp"

namespace iad {

enum class Method { Iad, Kmeanspp };
enum class SweepVariable { DTolerable, NUsers, CMin };

inline std::string to_string(Method m) { return m == Method::Iad ? "iad" : "kmeanspp"; }

inline Method method_from_string(const std::string& s) {
  if (s == "iad") return Method::Iad;
  if (s == "kmeanspp") return Method::Kmeanspp;
  if (s == "ddp" || s == "spiral") throw ConfigError("method '" + s + "' is reserved but not implemented");
  throw ConfigError("unknown method '" + s + "'");
}

inline std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::DTolerable: return "d_tolerable";
    case SweepVariable::NUsers: return "n_users";
    case SweepVariable::CMin: return "c_min";
  }
  return "unknown";
}

inline SweepVariable sweep_variable_from_string(const std::string& s) {
  if (s == "d_tolerable") return SweepVariable::DTolerable;
  if (s == "n_users") return SweepVariable::NUsers;
  if (s == "c_min") return SweepVariable::CMin;
  throw ConfigError("unknown sweep variable '" + s + "'");
}

struct SweepSpec {
  SweepVariable variable = SweepVariable::DTolerable;
  std::vector<double> values{60.0};
};

struct ExperimentConfig {
  ChannelParams channel;
  double l_allow_db = 119.0;
  double h_max_m = 120.0;
  RadioParams radio;
  IadParams iad;
  std::size_t kmeans_max_iters = 100;
  double kmeans_tol = 1e-3;
  ScenarioSpec scenario;
  std::vector<Method> methods{Method::Iad, Method::Kmeanspp};
  SweepSpec sweep;
  std::size_t trials = 100;
  std::uint64_t base_seed = 1;
  std::string output_dir = "results";
  std::size_t threads = 0;  // 0: hardware concurrency

  // Parameter set for one sweep value. The c_min and C_max of the deployer
  // always follow the radio section.
  struct Point {
    RadioParams radio;
    IadParams iad;
    ScenarioSpec scenario;
  };

  Point at(double sweep_value) const {
    Point p{radio, iad, scenario};
    switch (sweep.variable) {
      case SweepVariable::DTolerable: p.iad.d_tolerable = sweep_value; break;
      case SweepVariable::NUsers:
        if (sweep_value < 1 || sweep_value != std::floor(sweep_value))
          throw ConfigError("n_users sweep values must be positive integers");
        p.scenario.n_users = static_cast<std::size_t>(sweep_value);
        break;
      case SweepVariable::CMin: p.radio.min_rate_bps = sweep_value; break;
    }
    p.iad.c_min_bps = p.radio.min_rate_bps;
    p.iad.c_max_bps = p.radio.backhaul_capacity_bps;
    return p;
  }

  void validate() const {
    channel.validate();
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (methods.empty()) throw ConfigError("methods must not be empty");
    if (sweep.values.empty()) throw ConfigError("sweep values must not be empty");
    if (!(kmeans_tol > 0.0) || kmeans_max_iters < 1) throw ConfigError("kmeans: invalid tol/max_iters");
    for (double v : sweep.values) {
      const Point p = at(v);
      p.radio.validate();
      p.iad.validate();
      p.scenario.validate();
    }
  }
};

namespace detail {

template <class F>
void for_each_key(const nlohmann::json& j, const std::string& section, F&& f) {
  if (!j.is_object()) throw ConfigError(section + ": expected a JSON object");
  for (const auto& [key, val] : j.items())
    if (!f(key, val)) throw ConfigError(section + ": unknown key '" + key + "'");
}

}  // namespace detail

// Missing keys keep their defaults; unknown keys are errors.
inline ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig c = {}) {
  try {
    detail::for_each_key(j, "config", [&](const std::string& key, const nlohmann::json& v) {
      if (key == "channel") {
        detail::for_each_key(v, "channel", [&](const std::string& k, const nlohmann::json& x) {
          if (k == "a") c.channel.a = x.get<double>();
          else if (k == "b") c.channel.b = x.get<double>();
          else if (k == "eta_los_db") c.channel.eta_los_db = x.get<double>();
          else if (k == "eta_nlos_db") c.channel.eta_nlos_db = x.get<double>();
          else if (k == "carrier_hz") c.channel.carrier_hz = x.get<double>();
          else if (k == "light_speed_mps") c.channel.light_speed_mps = x.get<double>();
          else return false;
          return true;
        });
      } else if (key == "coverage") {
        detail::for_each_key(v, "coverage", [&](const std::string& k, const nlohmann::json& x) {
          if (k == "l_allow_db") c.l_allow_db = x.get<double>();
          else if (k == "h_max_m") c.h_max_m = x.get<double>();
          else return false;
          return true;
        });
      } else if (key == "radio") {
        detail::for_each_key(v, "radio", [&](const std::string& k, const nlohmann::json& x) {
          if (k == "p_tx_dbm") c.radio.p_tx_dbm = x.get<double>();
          else if (k == "total_bandwidth_hz") c.radio.total_bandwidth_hz = x.get<double>();
          else if (k == "noise_psd_dbm_hz") c.radio.noise_psd_dbm_hz = x.get<double>();
          else if (k == "sinr_threshold_db") c.radio.sinr_threshold_db = x.get<double>();
          else if (k == "backhaul_capacity_bps") c.radio.backhaul_capacity_bps = x.get<double>();
          else if (k == "min_rate_bps") c.radio.min_rate_bps = x.get<double>();
          else if (k == "rate_levels_bps") c.radio.rate_levels_bps = x.get<std::vector<double>>();
          else return false;
          return true;
        });
      } else if (key == "iad") {
        detail::for_each_key(v, "iad", [&](const std::string& k, const nlohmann::json& x) {
          if (k == "k") c.iad.k = x.get<std::size_t>();
          else if (k == "n_min") c.iad.n_min = x.get<std::size_t>();
          else if (k == "d_tolerable") c.iad.d_tolerable = x.get<double>();
          else if (k == "m") c.iad.m = x.get<std::size_t>();
          else if (k == "max_seed_attempts") c.iad.max_seed_attempts = x.get<std::size_t>();
          else if (k == "rho") c.iad.rho = x.get<double>();
          else return false;
          return true;
        });
      } else if (key == "kmeans") {
        detail::for_each_key(v, "kmeans", [&](const std::string& k, const nlohmann::json& x) {
          if (k == "max_iters") c.kmeans_max_iters = x.get<std::size_t>();
          else if (k == "tol") c.kmeans_tol = x.get<double>();
          else return false;
          return true;
        });
      } else if (key == "scenario") {
        c.scenario = spec_from_json(v, c.scenario);
      } else if (key == "methods") {
        c.methods.clear();
        for (const auto& m : v) c.methods.push_back(method_from_string(m.get<std::string>()));
      } else if (key == "sweep") {
        detail::for_each_key(v, "sweep", [&](const std::string& k, const nlohmann::json& x) {
          if (k == "variable") c.sweep.variable = sweep_variable_from_string(x.get<std::string>());
          else if (k == "values") c.sweep.values = x.get<std::vector<double>>();
          else return false;
          return true;
        });
      } else if (key == "trials") c.trials = v.get<std::size_t>();
      else if (key == "base_seed") c.base_seed = v.get<std::uint64_t>();
      else if (key == "output_dir") c.output_dir = v.get<std::string>();
      else if (key == "threads") c.threads = v.get<std::size_t>();
      else return false;
      return true;
    });
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.iad.c_min_bps = c.radio.min_rate_bps;
  c.iad.c_max_bps = c.radio.backhaul_capacity_bps;
  return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  return config_from_json(detail::parse_json_text(detail::read_file(path)));
}

struct SweepPoint {
  double sweep_value = 0.0;
  Method method = Method::Iad;
  std::vector<double> per_trial_s;
  double mean_s = 0.0;
  double std_s = 0.0;  // population standard deviation over trials
  double mean_runtime_ms = 0.0;
};

struct SweepResult {
  SweepVariable variable = SweepVariable::DTolerable;
  std::size_t trials = 0;
  std::uint64_t base_seed = 0;
  std::vector<SweepPoint> points;  // sorted by (sweep_value, method)
};

inline double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double population_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

class TrialError : public std::runtime_error {
public:
  TrialError(std::uint64_t seed, double sweep_value, Method method, const std::string& what)
      : std::runtime_error("trial failed (seed " + std::to_string(seed) + ", sweep value " +
                           std::to_string(sweep_value) + ", method " + to_string(method) +
                           "): " + what),
        seed_(seed),
        sweep_value_(sweep_value),
        method_(method) {}

  std::uint64_t seed() const noexcept { return seed_; }
  double sweep_value() const noexcept { return sweep_value_; }
  Method method() const noexcept { return method_; }

private:
  std::uint64_t seed_;
  double sweep_value_;
  Method method_;
};

struct TrialOutcome {
  double satisfaction = 0.0;
  double runtime_ms = 0.0;
};

inline TrialOutcome run_trial(const ExperimentConfig::Point& pt, const ChannelParams& ch,
                              const CoverageProfile& profile, std::span<const Point2> gus,
                              Method method, std::uint64_t seed, std::size_t kmeans_max_iters,
                              double kmeans_tol) {
  const auto t0 = std::chrono::steady_clock::now();
  Deployment dep;
  if (method == Method::Iad) {
    dep = deploy(gus, profile, pt.iad, seed);
  } else {
    KmeansParams kp{pt.iad.k, kmeans_max_iters, kmeans_tol, seed};
    dep = kmeanspp_deploy(gus, profile, pt.radio.n_max(), kp);
  }
  const auto t1 = std::chrono::steady_clock::now();
  EvaluationOptions opts{pt.iad.n_min, pt.iad.d_tolerable};
  const auto rep = evaluate_deployment(gus, dep.placements, dep.association, ch, pt.radio, opts);
  return {rep.satisfaction, std::chrono::duration<double, std::milli>(t1 - t0).count()};
}

inline SweepResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const CoverageProfile profile = optimal_elevation_angle(cfg.l_allow_db, cfg.h_max_m, cfg.channel);

  std::vector<double> values = cfg.sweep.values;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<Method> methods = cfg.methods;
  std::sort(methods.begin(), methods.end(),
            [](Method a, Method b) { return to_string(a) < to_string(b); });
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  const std::size_t n_values = values.size();
  const std::size_t n_methods = methods.size();
  const std::size_t n_jobs = n_values * cfg.trials;
  std::vector<TrialOutcome> outcomes(n_jobs * n_methods);

  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::size_t err_job = n_jobs;
  std::exception_ptr err;

  auto worker = [&] {
    for (std::size_t job = next++; job < n_jobs; job = next++) {
      const std::size_t vi = job / cfg.trials;
      const std::size_t t = job % cfg.trials;
      const std::uint64_t seed = cfg.base_seed + t;
      const auto pt = cfg.at(values[vi]);
      std::size_t mi = 0;
      try {
        ScenarioSpec spec = pt.scenario;
        spec.seed = seed;
        const auto gus = positions(generate(spec));
        for (; mi < n_methods; ++mi)
          outcomes[job * n_methods + mi] = run_trial(pt, cfg.channel, profile, gus, methods[mi], seed,
                                                     cfg.kmeans_max_iters, cfg.kmeans_tol);
      } catch (const std::exception& e) {
        std::lock_guard lock(err_mu);
        if (job < err_job) {
          err_job = job;
          err = std::make_exception_ptr(
              TrialError(seed, values[vi], methods[std::min(mi, n_methods - 1)], e.what()));
        }
      }
    }
  };

  std::size_t n_threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, std::max<std::size_t>(1, n_jobs));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  if (err) std::rethrow_exception(err);

  SweepResult res;
  res.variable = cfg.sweep.variable;
  res.trials = cfg.trials;
  res.base_seed = cfg.base_seed;
  for (std::size_t vi = 0; vi < n_values; ++vi) {
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      SweepPoint sp;
      sp.sweep_value = values[vi];
      sp.method = methods[mi];
      std::vector<double> runtimes;
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const auto& o = outcomes[(vi * cfg.trials + t) * n_methods + mi];
        sp.per_trial_s.push_back(o.satisfaction);
        runtimes.push_back(o.runtime_ms);
      }
      sp.mean_s = mean_of(sp.per_trial_s);
      sp.std_s = population_std(sp.per_trial_s);
      sp.mean_runtime_ms = mean_of(runtimes);
      res.points.push_back(std::move(sp));
    }
  }
  return res;
}

// Shortest decimal text that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// Wall-clock runtimes are left out so that the file is reproducible byte for byte.
inline std::string results_json(const SweepResult& r) {
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& p : r.points)
    pts.push_back({{"sweep_value", p.sweep_value},
                   {"method", to_string(p.method)},
                   {"mean_S", p.mean_s},
                   {"std_S", p.std_s},
                   {"per_trial_S", p.per_trial_s}});
  nlohmann::ordered_json doc = {{"format_version", 1},
                        {"sweep_variable", to_string(r.variable)},
                        {"trials", r.trials},
                        {"base_seed", r.base_seed},
                        {"points", std::move(pts)}};
  return doc.dump(2) + "\n";
}

inline std::string results_csv(const SweepResult& r) {
  std::string out = "sweep_value,method,mean_S,std_S,mean_runtime_ms\n";
  for (const auto& p : r.points) {
    out += format_double(p.sweep_value) + "," + to_string(p.method) + "," + format_double(p.mean_s) +
           "," + format_double(p.std_s) + "," + format_double(p.mean_runtime_ms) + "\n";
  }
  return out;
}

inline std::string csv_filename(SweepVariable v) { return "sweep_" + to_string(v) + ".csv"; }

// Writes results.json and sweep_<variable>.csv. Both files are staged next to
// their targets and renamed into place only once everything has been written.
inline void emit(const SweepResult& r, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

  const std::vector<std::pair<fs::path, std::string>> files{
      {dir / "results.json", results_json(r)}, {dir / csv_filename(r.variable), results_csv(r)}};
  std::vector<fs::path> staged;
  for (const auto& [path, text] : files) {
    fs::path tmp = path;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      for (const auto& s : staged) fs::remove(s, ec);
      throw std::runtime_error("cannot write " + tmp.string());
    }
    out << text;
    out.close();
    if (!out) {
      for (const auto& s : staged) fs::remove(s, ec);
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
    staged.push_back(tmp);
  }
  for (std::size_t i = 0; i < files.size(); ++i) fs::rename(staged[i], files[i].first);
}

}  // namespace iad

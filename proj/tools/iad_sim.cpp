// iad_sim: command-line front end for scenario generation, single deployments,
// evaluation and full parameter sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "iad/iad.hpp"

namespace {

struct Overrides {
  std::optional<double> d_tolerable;
  std::optional<double> c_min;
  std::optional<std::size_t> k;
  std::optional<std::size_t> n_min;
  std::optional<std::size_t> m;
  std::optional<std::size_t> n_users;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> base_seed;
  std::optional<std::string> output_dir;
  std::optional<std::size_t> threads;

  void apply(iad::ExperimentConfig& c) const {
    if (d_tolerable) c.iad.d_tolerable = *d_tolerable;
    if (c_min) c.radio.min_rate_bps = *c_min;
    if (k) c.iad.k = *k;
    if (n_min) c.iad.n_min = *n_min;
    if (m) c.iad.m = *m;
    if (n_users) c.scenario.n_users = *n_users;
    if (seed) c.scenario.seed = *seed;
    if (trials) c.trials = *trials;
    if (base_seed) c.base_seed = *base_seed;
    if (output_dir) c.output_dir = *output_dir;
    if (threads) c.threads = *threads;
    c.iad.c_min_bps = c.radio.min_rate_bps;
    c.iad.c_max_bps = c.radio.backhaul_capacity_bps;
  }
};

iad::ExperimentConfig load(const std::string& config_path, const Overrides& ov) {
  iad::ExperimentConfig c = config_path.empty() ? iad::ExperimentConfig{} : iad::load_config(config_path);
  ov.apply(c);
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void add_model_flags(CLI::App* sub, Overrides& ov) {
  sub->add_option("--d-tolerable", ov.d_tolerable, "Tolerable overlap depth (m)");
  sub->add_option("--c-min", ov.c_min, "Minimum rate requirement (bps)");
  sub->add_option("--k", ov.k, "Maximum number of UAVs");
  sub->add_option("--n-min", ov.n_min, "Minimum GUs per UAV");
  sub->add_option("--m", ov.m, "Candidate expansion iterations");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interference-aware multi-UAV deployment simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string scenario_path;
  std::string deployment_path;
  std::string method_name = "iad";
  bool quiet = false;
  Overrides ov;

  auto* gen = app.add_subcommand("generate", "Write a random GU scenario file");
  gen->add_option("--config", config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  gen->add_option("--n-users", ov.n_users, "Number of ground users");
  gen->add_option("--seed", ov.seed, "Scenario RNG seed");
  gen->add_option("--out,-o", out_path, "Output path ('-' for stdout)")->required();

  auto* dep = app.add_subcommand("deploy", "Place UAVs over one scenario and print the deployment JSON");
  dep->add_option("--config", config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  dep->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  dep->add_option("--method", method_name, "iad or kmeanspp");
  dep->add_option("--seed", ov.seed, "Deployment RNG seed (default: scenario seed)");
  dep->add_option("--out,-o", out_path, "Output path (default stdout)");
  add_model_flags(dep, ov);

  auto* ev = app.add_subcommand("evaluate", "Score a deployment against a scenario");
  ev->add_option("--config", config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  ev->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  ev->add_option("--deployment", deployment_path, "Deployment JSON")->required()->check(CLI::ExistingFile);
  ev->add_option("--out,-o", out_path, "Output path (default stdout)");
  add_model_flags(ev, ov);

  auto* sw = app.add_subcommand("sweep", "Run a Monte Carlo sweep and write results.json and CSV");
  sw->add_option("--config", config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  sw->add_option("--trials", ov.trials, "Trials per sweep value");
  sw->add_option("--base-seed", ov.base_seed, "Seed of trial 0");
  sw->add_option("--output-dir", ov.output_dir, "Directory for results.json and the CSV");
  sw->add_option("--threads", ov.threads, "Worker threads (0 = all cores)");
  sw->add_flag("--quiet,-q", quiet, "Do not print the summary table");
  add_model_flags(sw, ov);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto cfg = load(config_path, ov);
      iad::Scenario sc{cfg.scenario, iad::generate(cfg.scenario)};
      write_text(out_path, iad::scenario_to_string(sc));
    } else if (*dep) {
      const iad::Scenario sc = iad::load_scenario(scenario_path);
      auto cfg = load(config_path, ov);
      cfg.radio.validate();
      const auto profile = iad::optimal_elevation_angle(cfg.l_allow_db, cfg.h_max_m, cfg.channel);
      const auto pts = iad::positions(sc.users);
      const std::uint64_t seed = ov.seed.value_or(sc.spec.seed);
      iad::Deployment d;
      switch (iad::method_from_string(method_name)) {
        case iad::Method::Iad: d = iad::deploy(pts, profile, cfg.iad, seed); break;
        case iad::Method::Kmeanspp:
          d = iad::kmeanspp_deploy(pts, profile, cfg.radio.n_max(),
                                   {cfg.iad.k, cfg.kmeans_max_iters, cfg.kmeans_tol, seed});
          break;
      }
      write_text(out_path, iad::to_json(d).dump(2) + "\n");
    } else if (*ev) {
      const iad::Scenario sc = iad::load_scenario(scenario_path);
      const iad::Deployment d = iad::deployment_from_string(iad::detail::read_file(deployment_path));
      auto cfg = load(config_path, ov);
      cfg.radio.validate();
      const auto pts = iad::positions(sc.users);
      const auto rep = iad::evaluate_deployment(pts, d.placements, d.association, cfg.channel, cfg.radio,
                                                {cfg.iad.n_min, cfg.iad.d_tolerable});
      write_text(out_path, iad::to_json(rep).dump(2) + "\n");
    } else if (*sw) {
      const auto cfg = load(config_path, ov);
      const auto res = iad::run_sweep(cfg);
      iad::emit(res, cfg.output_dir);
      if (!quiet) {
        std::printf("%-14s %-9s %10s %10s %12s\n", iad::to_string(res.variable).c_str(), "method",
                    "mean_S", "std_S", "runtime_ms");
        for (const auto& p : res.points)
          std::printf("%-14g %-9s %10.4f %10.4f %12.3f\n", p.sweep_value, iad::to_string(p.method).c_str(),
                      p.mean_s, p.std_s, p.mean_runtime_ms);
        std::printf("wrote %s\n", cfg.output_dir.c_str());
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "iad_sim: error: %s\n", e.what());
    return 1;
  }
  return 0;
}

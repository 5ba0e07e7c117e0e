// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "iad/iad.hpp"
#include "oracle.hpp"

using namespace iad;

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

ExperimentConfig base_config() {
  auto c = load_config(std::filesystem::path(IAD_SOURCE_DIR) / "configs" / "dense_urban.json");
  c.threads = 0;
  return c;
}

std::map<std::pair<double, Method>, double> means(const SweepResult& r) {
  std::map<std::pair<double, Method>, double> m;
  for (const auto& p : r.points) m[{p.sweep_value, p.method}] = p.mean_s;
  return m;
}

std::vector<double> ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> idx(xs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
  std::vector<double> r(xs.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && xs[idx[j + 1]] == xs[idx[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * (i + j) + 1.0;
    i = j + 1;
  }
  return r;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean_of(a), mb = mean_of(b);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return saa == 0 || sbb == 0 ? 0.0 : sab / std::sqrt(saa * sbb);
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  return pearson(ranks(a), ranks(b));
}

void link_budget() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto prof = optimal_elevation_angle(119.0, 120.0, ChannelParams::dense_urban());
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = std::abs(prof.theta_opt_deg - 54.69) <= 1.0 && std::abs(prof.r_max - 85.0) <= 2.0 && ms < 1000.0;
  verdict(1, ok,
          "theta_opt=" + fmt("%.4f", prof.theta_opt_deg) + " deg (54.69 +/- 1), r_max=" + fmt("%.3f", prof.r_max) +
              " m (85 +/- 2), runtime=" + fmt("%.3f", ms) + " ms (< 1000)");
}

void d_tolerable_trend() {
  auto c = base_config();
  c.methods = {Method::Iad};
  c.sweep = {SweepVariable::DTolerable, {0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100}};
  c.trials = 100;
  const auto r = run_sweep(c);
  const auto m = means(r);
  std::vector<double> xs, ys;
  std::string curve;
  for (double d : c.sweep.values) {
    curve += " " + fmt("%.0f", d) + ":" + fmt("%.3f", m.at({d, Method::Iad}));
    if (d <= 60.0) {
      xs.push_back(d);
      ys.push_back(m.at({d, Method::Iad}));
    }
  }
  const double rho = spearman(xs, ys);
  const double s60 = m.at({60.0, Method::Iad});
  const bool ok = rho > 0.8 && s60 >= 0.70 && s60 <= 0.90;
  verdict(2, ok,
          "spearman[0,60]=" + fmt("%.3f", rho) + " (> 0.8), S(60)=" + fmt("%.4f", s60) + " (in [0.70, 0.90]);" +
              curve);
}

void user_count_ordering() {
  auto c = base_config();
  c.methods = {Method::Iad, Method::Kmeanspp};
  c.sweep = {SweepVariable::NUsers, {100, 200, 300, 400, 500, 600, 700, 800}};
  c.iad.d_tolerable = 60.0;
  c.trials = 100;
  const auto m = means(run_sweep(c));
  const double gap800 = m.at({800.0, Method::Iad}) - m.at({800.0, Method::Kmeanspp});
  std::string curve;
  for (double n : c.sweep.values)
    curve += " " + fmt("%.0f", n) + ":" + fmt("%.3f", m.at({n, Method::Iad})) + "/" +
             fmt("%.3f", m.at({n, Method::Kmeanspp}));
  const double gap100 = m.at({100.0, Method::Iad}) - m.at({100.0, Method::Kmeanspp});
  verdict(3, gap800 >= 0.10,
          "IAD - kmeans++ at N=800 = " + fmt("%.4f", gap800) + " (>= 0.10); N=100 gap " + fmt("%.4f", gap100) +
              (gap100 < 0 ? " (kmeans++ ahead, reported only)" : " (IAD ahead, reported only)") +
              "; iad/kmeans++:" + curve);
}

void c_min_robustness() {
  auto c = base_config();
  c.methods = {Method::Iad, Method::Kmeanspp};
  c.sweep = {SweepVariable::CMin, {1e6, 2e6, 3e6, 4e6, 5e6, 6e6}};
  c.iad.d_tolerable = 60.0;
  c.trials = 100;
  const auto m = means(run_sweep(c));
  const double drop = std::abs(m.at({6e6, Method::Iad}) - m.at({1e6, Method::Iad}));
  bool dominates = true;
  std::string curve;
  for (double v : c.sweep.values) {
    dominates = dominates && m.at({v, Method::Iad}) >= m.at({v, Method::Kmeanspp});
    curve += " " + fmt("%.0f", v / 1e6) + "M:" + fmt("%.3f", m.at({v, Method::Iad})) + "/" +
             fmt("%.3f", m.at({v, Method::Kmeanspp}));
  }
  verdict(4, drop <= 0.15 && dominates,
          "|S(6M) - S(1M)| = " + fmt("%.4f", drop) + " (<= 0.15), IAD >= kmeans++ everywhere: " +
              (dominates ? "yes" : "no") + "; iad/kmeans++:" + curve);
}

void property_suites() {
  const auto ch = ChannelParams::dense_urban();
  const auto prof = optimal_elevation_angle(119.0, 120.0, ch);
  std::mt19937_64 rng(2718);
  constexpr int kCases = 1000;

  int overlap_bad = 0, assoc_bad = 0;
  for (int t = 0; t < kCases; ++t) {
    ScenarioSpec s;
    s.seed = rng();
    s.n_users = std::uniform_int_distribution<std::size_t>(100, 600)(rng);
    IadParams p;
    p.d_tolerable = std::uniform_real_distribution<double>(0.0, 100.0)(rng);
    p.c_min_bps = 1e6 * std::uniform_int_distribution<int>(1, 6)(rng);
    const auto gus = positions(generate(s));
    const auto d = deploy(gus, prof, p, s.seed);
    const auto loads = d.loads();
    bool ov = true, as = true;
    for (std::size_t j = 0; j < d.placements.size(); ++j) {
      const auto& u = d.placements[j];
      as = as && loads[j] >= p.n_min && loads[j] <= p.n_max() && u.altitude <= prof.h_max &&
           u.radius <= prof.r_max;
      for (std::size_t q = 0; q < j; ++q) {
        const auto& w = d.placements[q];
        const double dist = distance(u.center(), w.center());
        const bool disjoint = dist > u.radius + w.radius;
        ov = ov && (disjoint || overlap_depth(u.disc(), w.disc()) < p.d_tolerable) && dist > u.radius &&
             dist > w.radius;
      }
    }
    for (std::size_t i = 0; i < gus.size(); ++i)
      if (d.association[i])
        as = as && *d.association[i] < d.placements.size() &&
             distance(gus[i], d.placements[*d.association[i]].center()) <= d.placements[*d.association[i]].radius;
    overlap_bad += !ov;
    assoc_bad += !as;
  }

  int oracle_bad = 0;
  const oracle::Env env;
  RadioParams radio;
  for (int t = 0; t < kCases; ++t) {
    const int k = std::uniform_int_distribution<int>(1, 5)(rng);
    const int n = std::uniform_int_distribution<int>(1, 30)(rng);
    std::uniform_real_distribution<double> pos(0.0, 250.0), rad(10.0, 85.0);
    std::vector<UavPlacement> uavs;
    std::vector<oracle::Uav> ou;
    for (int j = 0; j < k; ++j) {
      const double r = rad(rng);
      uavs.push_back({pos(rng), pos(rng), prof.altitude_for(r), r});
      ou.push_back({uavs.back().x, uavs.back().y, uavs.back().altitude, r});
    }
    std::vector<Point2> gus;
    std::vector<oracle::Gu> og;
    Association assoc;
    for (int i = 0; i < n; ++i) {
      gus.push_back({pos(rng), pos(rng)});
      og.push_back({gus.back().x, gus.back().y});
      const int j = std::uniform_int_distribution<int>(-1, k - 1)(rng);
      assoc.push_back(j < 0 ? std::nullopt : std::optional<std::size_t>(j));
    }
    const auto rep = evaluate_deployment(gus, uavs, assoc, ch, radio);
    const auto ref = oracle::evaluate(env, og, ou, assoc);
    auto rel = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(std::abs(b), 1e-300); };
    bool ok = rel(rep.satisfaction, ref.s) || (rep.satisfaction == 0.0 && ref.s == 0.0);
    for (int i = 0; i < n; ++i) {
      if (rep.per_gu[i].has_value() != ref.links[i].has_value()) {
        ok = false;
        continue;
      }
      if (!ref.links[i]) continue;
      ok = ok && rel(rep.per_gu[i]->sinr_linear, ref.links[i]->sinr) && rel(rep.per_gu[i]->rate_bps, ref.links[i]->rate) &&
           rep.per_gu[i]->satisfied == ref.links[i]->ok;
    }
    oracle_bad += !ok;
  }

  int channel_bad = 0;
  for (int t = 0; t < kCases; ++t) {
    ChannelParams p = ch;
    p.a = std::uniform_real_distribution<double>(4.0, 28.0)(rng);
    p.b = std::uniform_real_distribution<double>(0.1, 0.4)(rng);
    const double l_allow = std::uniform_real_distribution<double>(100.0, 140.0)(rng);
    oracle::Env e;
    e.a = p.a;
    e.b = p.b;
    bool ok = true;
    try {
      const auto pr = optimal_elevation_angle(l_allow, 1.0, p);
      const double best = oracle::radius_closed_form(e, pr.theta_opt_deg, l_allow);
      for (int deg = 1; deg <= 89; ++deg) ok = ok && best >= oracle::radius_closed_form(e, deg, l_allow);
    } catch (const std::exception&) {
      ok = false;
    }
    std::uniform_real_distribution<double> u(-1000.0, 1000.0);
    const Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    try {
      const auto cc = circumcircle(a, b, c);
      for (const auto& q : {a, b, c}) ok = ok && std::abs(distance(cc.center, q) - cc.radius) <= 1e-9 * cc.radius;
    } catch (const DegenerateGeometryError&) {
    }
    channel_bad += !ok;
  }

  const bool ok = overlap_bad == 0 && assoc_bad == 0 && oracle_bad == 0 && channel_bad == 0;
  verdict(5, ok,
          "failures out of " + std::to_string(kCases) + " each: overlap=" + std::to_string(overlap_bad) +
              ", association=" + std::to_string(assoc_bad) + ", oracle=" + std::to_string(oracle_bad) +
              ", channel/circumcircle=" + std::to_string(channel_bad));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "iad_acceptance_determinism";
  fs::remove_all(root);
  const std::string cfg = (fs::path(IAD_SOURCE_DIR) / "configs" / "dense_urban.json").string();
  std::string texts[2];
  bool ran = true;
  for (int run = 0; run < 2; ++run) {
    const fs::path out = root / ("run" + std::to_string(run));
    const std::string cmd = std::string("\"") + IAD_SIM_PATH + "\" sweep --config \"" + cfg +
                            "\" --trials 5 --base-seed 11 --threads 2 --quiet --output-dir \"" + out.string() + "\"";
    ran = ran && std::system(cmd.c_str()) == 0;
    texts[run] = slurp(out / "results.json");
  }
  const bool ok = ran && !texts[0].empty() && texts[0] == texts[1];
  verdict(6, ok,
          std::string("two CLI sweeps, ") + std::to_string(texts[0].size()) + " bytes, identical: " +
              (texts[0] == texts[1] ? "yes" : "no"));
  fs::remove_all(root);
}

void scaling() {
  const auto prof = optimal_elevation_angle(119.0, 120.0, ChannelParams::dense_urban());
  std::vector<double> lx, ly;
  std::string table;
  for (std::size_t n = 100; n <= 800; n += 100) {
    std::vector<double> times;
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      ScenarioSpec s;
      s.n_users = n;
      s.seed = seed;
      const auto gus = positions(generate(s));
      const auto t0 = std::chrono::steady_clock::now();
      const auto d = deploy(gus, prof, IadParams{}, seed);
      times.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
      if (d.placements.size() > 25) std::abort();
    }
    std::sort(times.begin(), times.end());
    const double med = times[times.size() / 2];
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(med));
    table += " " + std::to_string(n) + ":" + fmt("%.2f", med) + "ms";
  }
  const double mx = mean_of(lx), my = mean_of(ly);
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  verdict(7, slope < 1.5, "deploy runtime fit exponent=" + fmt("%.3f", slope) + " (< 1.5); median" + table);
}

}  // namespace

int main() {
  try {
    link_budget();
    d_tolerable_trend();
    user_count_ordering();
    c_min_robustness();
    property_suites();
    determinism();
    scaling();
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

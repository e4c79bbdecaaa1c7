// Copyright 2026 The qcut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite. Prints one PASS/FAIL line per criterion; exits non-zero
// if any criterion fails. Pass criterion numbers as arguments to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcut/qcut.hpp"

namespace {

using namespace qcut;
using Clock = std::chrono::steady_clock;

// Tolerances and sizes.
constexpr double kExactTol = 1e-9;            // criteria 1, 2
constexpr int kExactBattery = 60;             // criterion 1 instance count (>= 50)
constexpr double kMonteCarloTol = 0.01;       // criterion 3
constexpr std::size_t kMonteCarloShots = 1000000;
constexpr int kShrinkExhaustiveLimit = 14;    // criterion 4
constexpr std::size_t kShrinkSpotChecks = 20000;
constexpr int kSeparatorBruteLimit = 12;      // criterion 5
constexpr double kSeparatorSeconds = 60.0;
constexpr std::size_t kStatShots = 100000;    // criteria 6, 7
constexpr double kCalibrationRatio = 0.8;     // criterion 7
constexpr double kCalibrationFactors[] = {1.0, 1.5, 2.0, 3.0, 4.0, 6.0};
constexpr double kK2Target = 0.99;            // criterion 8

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SeparatorDecomposition layout(const oracle::CutInstance& c) {
  SeparatorDecomposition dec;
  dec.a = c.a;
  dec.b = c.b;
  dec.s = {c.s};
  std::sort(dec.a.begin(), dec.a.end());
  std::sort(dec.b.begin(), dec.b.end());
  dec.balance_bound = std::max(dec.a.size(), dec.b.size());
  return dec;
}

QaoaParams random_params(std::uint64_t seed) {
  Rng rng(seed);
  QaoaParams p{2, {}, {}};
  for (int k = 0; k < 2; ++k) {
    p.gammas.push_back(-1.5 + 3.0 * rng.uniform());
    p.betas.push_back(-1.5 + 3.0 * rng.uniform());
  }
  return p;
}

// Generated instance run through separator search and shrinking.
struct Shrunk {
  MaxCutInstance original;
  SeparatorDecomposition dec;
  ShrinkResult shrink;
};

Shrunk shrink_generated(int n, int m, int sep, std::uint64_t seed) {
  Shrunk out;
  out.original = generate_instance(n, m, sep, seed);
  out.dec = find_separator(out.original);
  out.shrink = shrink_stage(out.original, out.dec, {}, stage_seed(seed, SeedStage::kCorrelation));
  return out;
}

// Battery for criteria 1 and 2: random layouts plus shrunk generated
// instances, all with n <= 10.
struct ExactCase {
  MaxCutInstance instance;
  SeparatorDecomposition dec;
  QaoaParams params;
};

std::vector<ExactCase> exact_battery() {
  std::vector<ExactCase> out;
  for (std::uint64_t seed = 0; out.size() < kExactBattery - 10; ++seed) {
    int na = 1 + static_cast<int>(seed % 5);
    int nb = 1 + static_cast<int>((seed / 5) % 4);
    auto c = oracle::random_cut_instance(na, nb, 1000 + seed);
    out.push_back({c.instance, layout(c), random_params(seed)});
  }
  for (std::uint64_t seed = 1; out.size() < kExactBattery; ++seed) {
    auto s = shrink_generated(10, 13, 2, seed);
    if (s.shrink.shrunk.num_vertices() > 10) continue;
    out.push_back({s.shrink.shrunk, s.shrink.decomposition, random_params(500 + seed)});
  }
  return out;
}

Outcome criterion_1_2(bool bound_only, const std::vector<ExactCase>& battery) {
  double worst_diff = 0.0;
  double worst_slack = std::numeric_limits<double>::infinity();
  for (const auto& c : battery) {
    auto plan = build_cut_plan(c.instance, c.dec, c.params);
    auto exact = exact_cut_distribution(plan);
    auto uncut = oracle::probabilities(oracle::qaoa_state(c.instance, c.params.gammas, c.params.betas));
    for (std::size_t x = 0; x < uncut.size(); ++x) {
      worst_diff = std::max(worst_diff, std::abs(exact.signed_weights[x] - uncut[x]));
      worst_slack = std::min(worst_slack, exact.raw[x] - uncut[x] / 12.0);
    }
  }
  if (bound_only)
    return {worst_slack >= -kExactTol, "min raw - p/12 = " + fmt(worst_slack) + " over " +
                                          std::to_string(battery.size()) + " instances"};
  return {worst_diff <= kExactTol,
          "L_inf = " + fmt(worst_diff) + " over " + std::to_string(battery.size()) + " instances"};
}

Outcome criterion_3() {
  auto c = oracle::random_cut_instance(2, 3, 77);
  auto dec = layout(c);
  QaoaParams params{2, {0.45, 0.8}, {0.7, 0.3}};
  auto plan = build_cut_plan(c.instance, dec, params);
  auto set = sample_cut(plan, std::nullopt, kMonteCarloShots, 2024);
  auto q = reconstruct_distribution(set);
  auto uncut = oracle::probabilities(oracle::qaoa_state(c.instance, params.gammas, params.betas));
  double worst = 0.0;
  for (std::size_t x = 0; x < uncut.size(); ++x) {
    auto it = q.find(x);
    worst = std::max(worst, std::abs((it == q.end() ? 0.0 : it->second) - uncut[x]));
  }
  return {worst <= kMonteCarloTol, std::to_string(c.instance.num_vertices()) + " qubits, N=" +
                                       std::to_string(kMonteCarloShots) + ", L_inf = " + fmt(worst)};
}

Outcome criterion_4() {
  int exhaustive = 0;
  int spot = 0;
  std::size_t assignments = 0;
  struct Size { int n, m, sep; };
  std::vector<Size> sizes = {{10, 13, 2}, {12, 17, 3}, {15, 20, 3}, {14, 19, 4}, {20, 29, 4}, {25, 38, 3}};
  for (const auto& sz : sizes)
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      auto s = shrink_generated(sz.n, sz.m, sz.sep, seed);
      const auto& shrunk = s.shrink.shrunk;
      const auto& trace = s.shrink.trace;
      int n = shrunk.num_vertices();
      auto check = [&](std::uint64_t y) {
        Bits bits = bits_from_mask(y, n);
        ++assignments;
        return cut_value(s.original, expand_solution(trace, bits)) == cut_value(shrunk, bits);
      };
      if (n <= kShrinkExhaustiveLimit) {
        ++exhaustive;
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
          if (!check(y)) return {false, "mismatch n=" + std::to_string(sz.n) + " seed " + std::to_string(seed)};
      } else {
        ++spot;
        Rng rng(seed);
        for (std::size_t k = 0; k < kShrinkSpotChecks; ++k)
          if (!check(rng.next() & ((std::uint64_t{1} << n) - 1)))
            return {false, "mismatch n=" + std::to_string(sz.n) + " seed " + std::to_string(seed)};
      }
    }
  return {true, std::to_string(exhaustive) + " exhaustive, " + std::to_string(spot) + " spot-checked, " +
                    std::to_string(assignments) + " assignments"};
}

Outcome criterion_5() {
  int compared = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    int n = 5 + static_cast<int>(seed % (kSeparatorBruteLimit - 4));
    double density = 0.25 + 0.1 * static_cast<double>(seed % 4);
    auto g = oracle::random_graph(n, density, seed);
    int expect = oracle::brute_min_separator(g, balance_bound_for(kDefaultBalanceFraction, n));
    try {
      auto dec = find_separator(g);
      if (!verify_separator(g, dec) || static_cast<int>(dec.s.size()) != expect)
        return {false, "random graph seed " + std::to_string(seed) + " |S|=" + std::to_string(dec.s.size()) +
                           " brute force " + std::to_string(expect)};
    } catch (const InfeasibleError&) {
      if (expect != std::numeric_limits<int>::max())
        return {false, "random graph seed " + std::to_string(seed) + " reported infeasible"};
    }
    ++compared;
  }
  double slowest = 0.0;
  int generated = 0;
  struct Size { int n, m, sep; };
  for (auto sz : {Size{10, 13, 2}, Size{15, 20, 3}, Size{20, 29, 4}, Size{25, 38, 3}})
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto planted = generate_planted_instance(sz.n, sz.m, sz.sep, seed);
      auto t0 = Clock::now();
      auto dec = find_separator(planted.instance);
      double t = elapsed(t0);
      slowest = std::max(slowest, t);
      ++generated;
      if (!verify_separator(planted.instance, dec) || dec.s.size() > planted.separator.size() ||
          t > kSeparatorSeconds)
        return {false, "generated n=" + std::to_string(sz.n) + " seed " + std::to_string(seed) +
                           " |S|=" + std::to_string(dec.s.size()) + " in " + fmt(t) + " s"};
    }
  return {true, std::to_string(compared) + " brute-force matches, " + std::to_string(generated) +
                    " generated within planted size, slowest " + fmt(slowest) + " s"};
}

// Separator, shrink and training shared between the cut and uncut runs of
// one instance.
struct Prepared {
  Shrunk s;
  TrainResult training;
};

std::map<std::string, Prepared> prepared_cache;

const Prepared& prepare(int n, int m, int sep, std::uint64_t seed) {
  std::string key = std::to_string(n) + "/" + std::to_string(m) + "/" + std::to_string(sep) + "/" +
                    std::to_string(seed);
  auto it = prepared_cache.find(key);
  if (it != prepared_cache.end()) return it->second;
  auto t0 = Clock::now();
  Prepared p;
  p.s = shrink_generated(n, m, sep, seed);
  NelderMeadOptions opt;
  opt.max_evaluations = RunConfig{}.optimizer_budget;
  p.training = train(p.s.shrink.shrunk, 2, kDefaultScheduleStep, opt);
  std::cerr << "  prepared n=" << n << " shrunk n=" << p.s.shrink.shrunk.num_vertices() << " E0="
            << fmt(p.training.initial_expectation) << " E=" << fmt(p.training.final_expectation) << " in "
            << fmt(elapsed(t0)) << " s\n";
  return prepared_cache.emplace(key, std::move(p)).first->second;
}

nlohmann::json run_mode(const Prepared& p, RunMode mode, const std::optional<NoiseModel>& noise,
                        std::uint64_t seed) {
  auto t0 = Clock::now();
  RunConfig cfg;
  cfg.mode = mode;
  cfg.noise = noise;
  cfg.shots = kStatShots;
  cfg.seed = seed;
  const auto& sh = p.s.shrink;
  auto samples = sample_stage(sh.shrunk, sh.decomposition, p.training.params, cfg, nullptr);
  auto rep = analyze_samples(p.s.original, sh.trace, sh.shrunk, samples);
  std::cerr << "  " << mode_name(mode) << (noise ? " noisy" : " noiseless") << " n=" << p.s.original.num_vertices()
            << " p95_r=" << fmt(rep.summary["p95_r"].get<double>())
            << " min_r=" << fmt(rep.summary["min_observed_r"].get<double>()) << " in " << fmt(elapsed(t0))
            << " s\n";
  return rep.summary;
}

Outcome criterion_6() {
  const auto& p = prepare(25, 38, 3, 1);
  std::string detail;
  for (std::uint64_t seed : {1, 2}) {
    auto cut = run_mode(p, RunMode::kCut, std::nullopt, seed);
    auto uncut = run_mode(p, RunMode::kUncut, std::nullopt, seed);
    double pc = cut["p95_r"], pu = uncut["p95_r"];
    double mc = cut["min_observed_r"], mu = uncut["min_observed_r"];
    bool ok = pc <= pu && mc < mu;
    detail += (detail.empty() ? "" : "; ") + std::string("seed ") + std::to_string(seed) + ": p95_r cut " +
              fmt(pc) + " uncut " + fmt(pu) + ", min_r cut " + fmt(mc) + " uncut " + fmt(mu);
    if (ok) return {true, "shrunk n=" + std::to_string(p.s.shrink.shrunk.num_vertices()) + ", " + detail};
  }
  return {false, detail};
}

NoiseModel scaled(NoiseModel base, double factor) {
  base.p1 = std::min(1.0, base.p1 * factor);
  base.p2 = std::min(1.0, base.p2 * factor);
  base.p_ro = std::min(1.0, base.p_ro * factor);
  return base;
}

// Calibration: the smallest multiple of the default rates that pushes the
// 20-node uncut p95_r below kCalibrationRatio times its noiseless value.
Outcome criterion_7() {
  struct Size { int n, m, sep; };
  std::vector<Size> sizes = {{10, 13, 2}, {15, 20, 3}, {20, 29, 4}};

  const auto& p20 = prepare(20, 29, 4, 1);
  double clean = run_mode(p20, RunMode::kUncut, std::nullopt, 1)["p95_r"];
  std::optional<double> factor;
  double noisy20 = 0.0;
  std::string detail = "calibration (noiseless " + fmt(clean) + "):";
  for (double f : kCalibrationFactors) {
    noisy20 = run_mode(p20, RunMode::kUncut, scaled(NoiseModel{}, f), 1)["p95_r"];
    detail += " x" + fmt(f) + "->" + fmt(noisy20);
    if (noisy20 < kCalibrationRatio * clean) {
      factor = f;
      break;
    }
  }
  if (!factor) return {false, detail + "; no factor reached the degraded regime"};
  NoiseModel noise = scaled(NoiseModel{}, *factor);
  detail += "; delta at x" + fmt(*factor) + ":";

  std::vector<double> delta;
  for (const auto& sz : sizes) {
    const auto& p = prepare(sz.n, sz.m, sz.sep, 1);
    double cut = run_mode(p, RunMode::kCut, noise, 1)["p95_r"];
    double uncut = sz.n == 20 ? noisy20 : run_mode(p, RunMode::kUncut, noise, 1)["p95_r"].get<double>();
    delta.push_back(cut - uncut);
    detail += " " + std::to_string(sz.n) + ":" + fmt(cut - uncut);
  }
  bool trend = delta[0] <= delta[1] && delta[1] <= delta[2] && delta[2] > 0.0;
  return {trend, detail};
}

Outcome criterion_8() {
  int checked = 0;
  double worst = std::numeric_limits<double>::infinity();
  auto check = [&](const MaxCutInstance& inst, int p, int budget) {
    NelderMeadOptions opt;
    opt.max_evaluations = budget;
    auto r = train(inst, p, kDefaultScheduleStep, opt);
    double direct = QaoaEvaluator(inst).expectation(r.params);
    worst = std::min(worst, r.final_expectation - r.initial_expectation);
    ++checked;
    return r.final_expectation >= r.initial_expectation && std::abs(direct - r.final_expectation) < 1e-9;
  };
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = oracle::random_weighted(3 + static_cast<int>(seed % 8), 0.5, seed, seed % 2 == 1);
    for (int p : {1, 2})
      if (!check(inst, p, 150)) return {false, "random instance seed " + std::to_string(seed)};
  }
  for (const auto& [key, prep] : prepared_cache) {
    const auto& r = prep.training;
    worst = std::min(worst, r.final_expectation - r.initial_expectation);
    ++checked;
    if (r.final_expectation < r.initial_expectation) return {false, "pipeline instance " + key};
  }
  MaxCutInstance k2(2, {{0, 1, 1}});
  NelderMeadOptions opt;
  auto r = train(k2, 1, kDefaultScheduleStep, opt);
  bool k2_ok = r.final_expectation >= kK2Target;
  return {k2_ok, std::to_string(checked) + " trainings never below initialization (min gain " + fmt(worst) +
                     "), K2 p=1 expectation " + fmt(r.final_expectation)};
}

Outcome criterion_9() {
  std::vector<std::string> failed;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  };
  // Normalized objective.
  std::vector<Edge> edges;
  for (int i = 0; i < 38; ++i) edges.push_back({i, i + 1, 1});
  MaxCutInstance row4(39, edges);
  expect(row4.uniform_expectation() == Rational(19), "c0 = 19");
  expect(normalized_objective(Rational(26), row4, Rational(33)) == Rational(1, 2), "r(26) = 1/2");
  expect(normalized_objective(Rational(33), row4, Rational(33)) == Rational(1), "r(c*) = 1");
  expect(normalized_objective(Rational(19), row4, Rational(33)) == Rational(0), "r(c0) = 0");

  // Histograms.
  MaxCutInstance k2(2, {{0, 1, 1}});
  auto h = histogram_from_samples(std::vector<std::uint64_t>{1, 0}, 2, k2);
  expect(h.bins.size() == 2 && h.bins[Rational(1)] == 0.5 && h.bins[Rational(0)] == 0.5, "K2 histogram");
  SignedSampleSet cancel{2, 1.0, {{1, 1}, {1, -1}}};
  expect(histogram_from_samples(cancel, k2).bins[Rational(1)] == 0.0, "signed cancellation");

  // clamp_normalize.
  ObjectiveHistogram signed_h;
  signed_h.bins = {{Rational(2), 1.2}, {Rational(1), -0.2}};
  auto clamped = clamp_normalize(signed_h);
  expect(clamped.bins.size() == 1 && clamped.bins[Rational(2)] == 1.0, "clamp {2:1.2, 1:-0.2}");
  ObjectiveHistogram plain;
  plain.bins = {{Rational(0), 0.25}, {Rational(3), 0.75}};
  plain.normalized = true;
  expect(clamp_normalize(plain).bins == plain.bins, "clamp leaves normalized histogram");
  ObjectiveHistogram negative;
  negative.bins = {{Rational(0), -1.0}};
  bool threw = false;
  try {
    clamp_normalize(negative);
  } catch (const ValidationError&) {
    threw = true;
  }
  expect(threw, "clamp {0:-1} throws");

  // percentile.
  auto hist = [](std::map<Rational, double> bins) {
    ObjectiveHistogram out;
    out.bins = std::move(bins);
    out.normalized = true;
    return out;
  };
  expect(percentile(hist({{Rational(5), 1.0}}), 0.95) == Rational(5), "point mass");
  expect(percentile(hist({{Rational(0), 0.5}, {Rational(1), 0.5}}), 0.95) == Rational(1), "two halves");
  expect(percentile(hist({{Rational(0), 0.96}, {Rational(1), 0.04}}), 0.95) == Rational(0), "0.96 at zero");

  if (failed.empty()) return {true, "13 examples exact"};
  std::string detail = "failed:";
  for (const auto& f : failed) detail += " [" + f + "]";
  return {false, detail};
}

Outcome criterion_10() {
  namespace fs = std::filesystem;
  fs::path root = fs::temp_directory_path() / "qcut_acceptance_repro";
  fs::remove_all(root);
  int files = 0;
  for (bool noisy : {false, true}) {
    RunConfig cfg;
    cfg.mode = noisy ? RunMode::kUncut : RunMode::kCut;
    if (noisy) cfg.noise = NoiseModel{};
    cfg.shots = 20000;
    cfg.seed = 11;
    cfg.optimizer_budget = 100;
    std::vector<fs::path> dirs;
    for (int run = 0; run < 2; ++run) {
      cfg.output_dir = (root / (std::string(mode_name(cfg.mode)) + std::to_string(run))).string();
      run_pipeline(cfg);
      dirs.emplace_back(cfg.output_dir);
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      auto name = entry.path().filename();
      if (!fs::exists(dirs[1] / name) || read_file(entry.path()) != read_file(dirs[1] / name))
        return {false, name.string() + " differs between runs"};
      ++files;
    }
  }
  fs::remove_all(root);
  return {true, std::to_string(files) + " artifacts byte-identical across repeated runs"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto wanted = [&](int k) { return only.empty() || only.count(k) > 0; };

  std::optional<std::vector<ExactCase>> battery;
  auto get_battery = [&]() -> const std::vector<ExactCase>& {
    if (!battery) battery = exact_battery();
    return *battery;
  };

  std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, [&] { return criterion_1_2(false, get_battery()); }},
      {2, [&] { return criterion_1_2(true, get_battery()); }},
      {3, criterion_3},
      {4, criterion_4},
      {5, criterion_5},
      {6, criterion_6},
      {7, criterion_7},
      {8, criterion_8},
      {9, criterion_9},
      {10, criterion_10},
  };
  int failures = 0;
  for (auto& [k, run] : criteria) {
    if (!wanted(k)) continue;
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "  ["
              << fmt(elapsed(t0)) << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}

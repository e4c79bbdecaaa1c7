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

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcut/analysis.hpp"
#include "qcut/errors.hpp"
#include "qcut/exact_solver.hpp"
#include "qcut/generator.hpp"
#include "qcut/graph.hpp"
#include "qcut/qaoa.hpp"
#include "qcut/rng.hpp"
#include "qcut/separator.hpp"
#include "qcut/shrink.hpp"
#include "qcut/simulator.hpp"
#include "qcut/wirecut.hpp"

namespace qcut {

enum class RunMode { kCut, kUncut, kClassicalCut };

inline const char* mode_name(RunMode m) {
  switch (m) {
    case RunMode::kCut: return "cut";
    case RunMode::kUncut: return "uncut";
    case RunMode::kClassicalCut: break;
  }
  return "classical-cut";
}

inline RunMode parse_mode(const std::string& s) {
  if (s == "cut") return RunMode::kCut;
  if (s == "uncut") return RunMode::kUncut;
  if (s == "classical-cut") return RunMode::kClassicalCut;
  throw ValidationError("unknown mode '" + s + "' (expected cut, uncut or classical-cut)");
}

inline CorrelationBackend parse_backend(const std::string& s) {
  if (s == "auto") return CorrelationBackend::kAuto;
  if (s == "exhaustive") return CorrelationBackend::kExhaustive;
  if (s == "local-search") return CorrelationBackend::kLocalSearch;
  throw ValidationError("unknown correlation backend '" + s + "'");
}

struct GeneratorSpec {
  int n = 10;
  int m = 13;
  int separator_size = 2;
  std::uint64_t seed = 1;
};

struct RunConfig {
  /// Instance file; the generator spec is used when empty.
  std::string instance_path;
  GeneratorSpec generator;
  double balance_fraction = kDefaultBalanceFraction;
  CorrelationOptions correlation;
  int p = 2;
  double dt = kDefaultScheduleStep;
  int optimizer_budget = 500;
  RunMode mode = RunMode::kCut;
  std::optional<NoiseModel> noise;
  std::size_t shots = 100000;
  std::uint64_t seed = 1;
  std::string output_dir;
  /// Samples drawn per noisy trajectory in uncut and classical-cut runs.
  std::size_t trajectory_reuse = 200;
  std::chrono::milliseconds separator_time_limit{60000};
  /// Optional progress log; stage lines carry input digests.
  std::ostream* log = nullptr;

  void validate() const {
    if (shots < 1) throw ValidationError("sample count N must be at least 1");
    if (mode == RunMode::kCut && p != 2) throw ValidationError("cut mode requires p = 2");
    if (p < 1) throw ValidationError("p must be at least 1");
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    if (optimizer_budget < 0) throw ValidationError("optimizer budget must be non-negative");
    if (trajectory_reuse < 1) throw ValidationError("trajectory reuse must be at least 1");
    if (!(balance_fraction >= 0.5 && balance_fraction < 1.0))
      throw ValidationError("balance fraction must lie in [0.5, 1)");
    if (correlation.budget < 1) throw ValidationError("correlation budget must be at least 1");
    if (noise) noise->validate();
  }
};

// Substream labels for the master seed.
enum class SeedStage : std::uint64_t { kCorrelation = 1, kSampling = 2, kClassicalCut = 3 };

inline std::uint64_t stage_seed(std::uint64_t master, SeedStage stage) {
  return derive_seed(master, static_cast<std::uint64_t>(stage));
}

/// Samples of a QAOA circuit on `inst`. Noiseless runs sample the exact
/// distribution; noisy runs simulate ceil(N / reuse) trajectories of the
/// gate-level circuit and draw up to `reuse` bitstrings from each.
inline SignedSampleSet sample_uncut(const MaxCutInstance& inst, const QaoaParams& params,
                                    const std::optional<NoiseModel>& noise, std::size_t shots,
                                    std::uint64_t seed, std::size_t reuse = 200) {
  SignedSampleSet set;
  set.num_bits = inst.num_vertices();
  set.kappa = 1.0;
  set.samples.reserve(shots);
  if (!noise) {
    auto cdf = cumulative(QaoaEvaluator(inst).distribution(params));
    Rng rng(derive_seed(seed, 0));
    for (std::size_t i = 0; i < shots; ++i) set.samples.push_back({sample_index(cdf, rng.uniform()), 1});
    return set;
  }
  Circuit circuit = build_qaoa(inst, params);
  for (std::size_t t = 0; set.samples.size() < shots; ++t) {
    Rng rng(derive_seed(seed, t));
    std::size_t count = std::min(reuse, shots - set.samples.size());
    for (auto x : sample_trajectory(circuit, noise, rng, count)) set.samples.push_back({x, 1});
  }
  return set;
}

/// Instances left on each side once the separator vertex is pinned to
/// `value`: edges to s become linear terms and every constant goes to side A,
/// so objective(x) = side_a(x_A) + side_b(x_B).
struct PinnedSplit {
  MaxCutInstance side_a;
  MaxCutInstance side_b;
};

inline PinnedSplit pin_separator(const MaxCutInstance& inst, const SeparatorDecomposition& dec, int value) {
  if (dec.s.size() != 1) throw ValidationError("classical cutting needs a separator of exactly one vertex");
  const int s = dec.s.front();
  auto n = static_cast<std::size_t>(inst.num_vertices());
  std::vector<int> local(n, -1);
  std::vector<int> side(n, -1);
  for (std::size_t i = 0; i < dec.a.size(); ++i) {
    local[static_cast<std::size_t>(dec.a[i])] = static_cast<int>(i);
    side[static_cast<std::size_t>(dec.a[i])] = 0;
  }
  for (std::size_t i = 0; i < dec.b.size(); ++i) {
    local[static_cast<std::size_t>(dec.b[i])] = static_cast<int>(i);
    side[static_cast<std::size_t>(dec.b[i])] = 1;
  }
  std::vector<Edge> edges[2];
  std::vector<Rational> linear[2] = {std::vector<Rational>(dec.a.size(), Rational(0)),
                                     std::vector<Rational>(dec.b.size(), Rational(0))};
  Rational offset = inst.offset() + (value ? inst.linear(s) : Rational(0));
  for (const Edge& e : inst.edges()) {
    int su = e.u == s ? -2 : side[static_cast<std::size_t>(e.u)];
    int sv = e.v == s ? -2 : side[static_cast<std::size_t>(e.v)];
    if (su >= 0 && su == sv) {
      edges[su].push_back({local[static_cast<std::size_t>(e.u)], local[static_cast<std::size_t>(e.v)], e.w});
      continue;
    }
    if (su >= 0 && sv >= 0) throw ValidationError("decomposition has an edge between A and B");
    int other = e.u == s ? e.v : e.u;
    int k = side[static_cast<std::size_t>(other)];
    auto& h = linear[k][static_cast<std::size_t>(local[static_cast<std::size_t>(other)])];
    // [x != value] is x for value 0 and 1 - x for value 1.
    if (value == 0) {
      h += e.w;
    } else {
      h -= e.w;
      offset += e.w;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (static_cast<int>(v) == s || inst.linear(static_cast<int>(v)) == Rational(0)) continue;
    linear[side[v]][static_cast<std::size_t>(local[v])] += inst.linear(static_cast<int>(v));
  }
  return {MaxCutInstance(static_cast<int>(dec.a.size()), edges[0], linear[0], offset),
          MaxCutInstance(static_cast<int>(dec.b.size()), edges[1], linear[1], 0)};
}

/// Baseline that enumerates both values of the single separator vertex and
/// runs independent QAOA circuits on the two sides (trained separately per
/// side and per value). Half of the N shots go to each value.
inline SignedSampleSet classical_cut_run(const MaxCutInstance& shrunk, const SeparatorDecomposition& dec,
                                         const RunConfig& cfg, std::size_t shots, std::uint64_t seed) {
  if (dec.s.size() != 1) throw ValidationError("classical cutting needs a separator of exactly one vertex");
  if (!verify_separator(shrunk, dec)) throw ValidationError("decomposition is not a valid separator");
  SignedSampleSet set;
  set.num_bits = shrunk.num_vertices();
  set.kappa = 1.0;
  NelderMeadOptions opt;
  opt.max_evaluations = cfg.optimizer_budget;
  const int s = dec.s.front();
  for (int value = 0; value < 2; ++value) {
    std::size_t count = value == 0 ? shots - shots / 2 : shots / 2;
    if (count == 0) continue;
    auto split = pin_separator(shrunk, dec, value);
    auto params_a = train(split.side_a, cfg.p, cfg.dt, opt).params;
    auto params_b = train(split.side_b, cfg.p, cfg.dt, opt).params;
    auto base = derive_seed(seed, static_cast<std::uint64_t>(value));
    auto xs_a = sample_uncut(split.side_a, params_a, cfg.noise, count, derive_seed(base, 0), cfg.trajectory_reuse);
    auto xs_b = sample_uncut(split.side_b, params_b, cfg.noise, count, derive_seed(base, 1), cfg.trajectory_reuse);
    for (std::size_t i = 0; i < count; ++i) {
      std::uint64_t x = value ? std::uint64_t{1} << s : 0;
      for (std::size_t k = 0; k < dec.a.size(); ++k)
        if ((xs_a.samples[i].bits >> k) & 1U) x |= std::uint64_t{1} << dec.a[k];
      for (std::size_t k = 0; k < dec.b.size(); ++k)
        if ((xs_b.samples[i].bits >> k) & 1U) x |= std::uint64_t{1} << dec.b[k];
      set.samples.push_back({x, 1});
    }
  }
  return set;
}

// ---------------------------------------------------------------------------
// Stages
// ---------------------------------------------------------------------------

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

inline nlohmann::json read_json(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

inline MaxCutInstance load_instance(const RunConfig& cfg) {
  if (!cfg.instance_path.empty()) return parse_instance(read_file(cfg.instance_path));
  const auto& g = cfg.generator;
  return generate_instance(g.n, g.m, g.separator_size, g.seed);
}

inline ShrinkResult shrink_stage(const MaxCutInstance& inst, const SeparatorDecomposition& dec,
                                 CorrelationOptions options, std::uint64_t seed) {
  options.seed = seed;
  auto correlations = estimate_correlations(inst, pairs_within(dec.s), options);
  return shrink_separator(inst, dec, correlations);
}

/// Shrunk-level samples for the configured mode.
inline SignedSampleSet sample_stage(const MaxCutInstance& shrunk, const SeparatorDecomposition& shrunk_dec,
                                    const QaoaParams& params, const RunConfig& cfg, std::string* plan_digest) {
  std::uint64_t seed = stage_seed(cfg.seed, SeedStage::kSampling);
  switch (cfg.mode) {
    case RunMode::kCut: {
      auto plan = build_cut_plan(shrunk, shrunk_dec, params);
      if (plan_digest) *plan_digest = plan.digest();
      return sample_cut(plan, cfg.noise, cfg.shots, seed);
    }
    case RunMode::kUncut:
      if (plan_digest) *plan_digest = instance_digest(shrunk);
      return sample_uncut(shrunk, params, cfg.noise, cfg.shots, seed, cfg.trajectory_reuse);
    case RunMode::kClassicalCut:
      if (plan_digest) *plan_digest = instance_digest(shrunk);
      return classical_cut_run(shrunk, shrunk_dec, cfg, cfg.shots, stage_seed(cfg.seed, SeedStage::kClassicalCut));
  }
  throw ValidationError("unknown mode");
}

struct AnalysisReport {
  nlohmann::json summary;
  ObjectiveHistogram original;
  ObjectiveHistogram shrunk;
};

/// Metrics at the original level (after expansion) and at the shrunk level.
inline AnalysisReport analyze_samples(const MaxCutInstance& original, const ShrinkTrace& trace,
                                      const MaxCutInstance& shrunk, const SignedSampleSet& samples) {
  AnalysisReport rep;
  Rational c_star = solve_exact(original).best_value;
  Rational c_star_shrunk = solve_exact(shrunk).best_value;
  rep.original = histogram_from_samples(samples, original, &trace);
  rep.shrunk = histogram_from_samples(samples, shrunk);
  HistogramSummary top = summarize(rep.original, original, c_star);
  nlohmann::json j = to_json(top);
  j["instance_digest"] = instance_digest(original);
  j["n"] = original.num_vertices();
  j["num_edges"] = original.num_edges();
  j["shrunk_n"] = shrunk.num_vertices();
  j["c_star"] = to_double(c_star);
  j["c0"] = to_double(original.uniform_expectation());
  j["N"] = samples.size();
  j["kappa"] = samples.kappa;
  j["shrunk_level"] = to_json(summarize(rep.shrunk, shrunk, c_star_shrunk));
  j["shrunk_level"]["c_star"] = to_double(c_star_shrunk);
  j["unsigned"] = to_json(summarize(unsigned_histogram(rep.original), original, c_star));
  rep.summary = std::move(j);
  return rep;
}

/// Histogram CSVs (clamped and raw signed at the original level, clamped at
/// the shrunk level) and summary.json.
inline void write_analysis(const std::filesystem::path& dir, const AnalysisReport& rep,
                           const MaxCutInstance& original, const MaxCutInstance& shrunk) {
  auto histogram = [&](const char* name, const ObjectiveHistogram& h, const MaxCutInstance& inst) {
    std::ofstream out(dir / name, std::ios::binary);
    write_histogram_csv(out, h, instance_digest(inst));
  };
  histogram("histogram_original.csv", clamp_normalize(rep.original), original);
  histogram("histogram_original_signed.csv", rep.original, original);
  histogram("histogram_shrunk.csv", clamp_normalize(rep.shrunk), shrunk);
  write_file(dir / "summary.json", rep.summary.dump(2) + "\n");
}

struct RunReport {
  nlohmann::json summary;
  MaxCutInstance instance;
  SeparatorDecomposition decomposition;
  ShrinkResult shrink;
  TrainResult training;
  SignedSampleSet samples;
  AnalysisReport analysis;
};

inline nlohmann::json noise_json(const std::optional<NoiseModel>& noise) {
  if (!noise) return nullptr;
  return {{"p1", noise->p1}, {"p2", noise->p2}, {"p_ro", noise->p_ro}};
}

/// Full procedure: instance -> separator -> shrink -> train -> sample ->
/// expand -> histograms. Writes every stage artifact when output_dir is set.
inline RunReport run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  auto log = [&](const std::string& line) {
    if (cfg.log) *cfg.log << "[qcut] " << line << std::endl;
  };
  RunReport rep;
  rep.instance = load_instance(cfg);
  log("instance n=" + std::to_string(rep.instance.num_vertices()) + " m=" +
      std::to_string(rep.instance.num_edges()) + " digest=" + instance_digest(rep.instance));

  rep.decomposition = find_separator(rep.instance, cfg.balance_fraction, cfg.separator_time_limit);
  log("separator |S|=" + std::to_string(rep.decomposition.s.size()) + " input=" + instance_digest(rep.instance));

  rep.shrink = shrink_stage(rep.instance, rep.decomposition, cfg.correlation,
                            stage_seed(cfg.seed, SeedStage::kCorrelation));
  log("shrink n'=" + std::to_string(rep.shrink.shrunk.num_vertices()) + " input=" +
      fnv1a_hex(to_json(rep.decomposition).dump()));

  NelderMeadOptions opt;
  opt.max_evaluations = cfg.optimizer_budget;
  rep.training = train(rep.shrink.shrunk, cfg.p, cfg.dt, opt);
  log("train E0=" + std::to_string(rep.training.initial_expectation) +
      " E=" + std::to_string(rep.training.final_expectation) + " input=" + instance_digest(rep.shrink.shrunk));

  std::string plan_digest;
  rep.samples = sample_stage(rep.shrink.shrunk, rep.shrink.decomposition, rep.training.params, cfg, &plan_digest);
  log(std::string("sample mode=") + mode_name(cfg.mode) + " N=" + std::to_string(rep.samples.size()) +
      " plan=" + plan_digest);

  rep.analysis = analyze_samples(rep.instance, rep.shrink.trace, rep.shrink.shrunk, rep.samples);
  nlohmann::json& s = rep.analysis.summary;
  s["mode"] = mode_name(cfg.mode);
  s["noise"] = noise_json(cfg.noise);
  s["seed"] = cfg.seed;
  s["separator_size"] = rep.decomposition.s.size();
  s["training"] = {{"initial_expectation", rep.training.initial_expectation},
                   {"final_expectation", rep.training.final_expectation},
                   {"evaluations", rep.training.evaluations}};
  rep.summary = s;

  if (!cfg.output_dir.empty()) {
    namespace fs = std::filesystem;
    fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    write_file(dir / "instance.txt", write_instance(rep.instance));
    write_file(dir / "decomposition.json", to_json(rep.decomposition).dump(2) + "\n");
    write_file(dir / "shrunk_instance.txt", write_instance(rep.shrink.shrunk));
    write_file(dir / "shrunk_decomposition.json", to_json(rep.shrink.decomposition).dump(2) + "\n");
    write_file(dir / "trace.json", to_json(rep.shrink.trace).dump(2) + "\n");
    write_file(dir / "params.json", to_json(rep.training.params).dump(2) + "\n");
    {
      std::ofstream out(dir / "samples.csv", std::ios::binary);
      write_samples_csv(out, rep.samples, {rep.samples.kappa, cfg.seed, plan_digest});
    }
    write_analysis(dir, rep.analysis, rep.instance, rep.shrink.shrunk);
  }
  return rep;
}

/// One CSV row per report: (n, mode, noise) with the percentile metrics.
/// Reports of the same size with different instance digests are flagged.
inline std::string compare_runs(const std::vector<nlohmann::json>& reports) {
  if (reports.size() < 2) throw ValidationError("comparison needs at least two reports");
  std::map<int, std::string> digest_by_n;
  std::map<int, bool> mismatch;
  for (const auto& r : reports) {
    int n = r.at("n").get<int>();
    auto d = r.at("instance_digest").get<std::string>();
    auto [it, fresh] = digest_by_n.emplace(n, d);
    if (!fresh && it->second != d) mismatch[n] = true;
  }
  std::ostringstream out;
  out << std::setprecision(10);
  out << "n,mode,noise,instance_digest,p95_objective,p95_r,best_r,mean_r,flag\n";
  for (const auto& r : reports) {
    int n = r.at("n").get<int>();
    bool noisy = r.contains("noise") && !r.at("noise").is_null();
    out << n << ',' << r.at("mode").get<std::string>() << ',' << (noisy ? "noisy" : "noiseless") << ','
        << r.at("instance_digest").get<std::string>() << ',' << r.at("p95_objective").get<double>() << ','
        << r.at("p95_r").get<double>() << ',' << r.at("best_r").get<double>() << ','
        << r.at("mean_r").get<double>() << ',' << (mismatch[n] ? "mismatched_instance" : "") << '\n';
  }
  return out.str();
}

}  // namespace qcut

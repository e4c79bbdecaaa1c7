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

// Command-line front end: one subcommand per pipeline stage plus run-all and
// compare. Exit codes: 0 success, 2 invalid input, 3 infeasible separator,
// 1 anything else.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qcut/qcut.hpp"

namespace fs = std::filesystem;
using namespace qcut;

namespace {

constexpr const char* kOutputDirEnv = "QCUT_OUTPUT_DIR";

// Noise flags: any probability given (or --noisy) turns noise on.
struct NoiseFlags {
  bool noisy = false;
  NoiseModel model;
  CLI::Option* p1 = nullptr;
  CLI::Option* p2 = nullptr;
  CLI::Option* p_ro = nullptr;

  void add(CLI::App* app) {
    app->add_flag("--noisy", noisy, "Enable the stochastic Pauli + readout noise model");
    p1 = app->add_option("--p1", model.p1, "Pauli error probability after one-qubit gates")->capture_default_str();
    p2 = app->add_option("--p2", model.p2, "Pauli error probability after two-qubit gates")->capture_default_str();
    p_ro = app->add_option("--p-ro", model.p_ro, "Readout flip probability per bit")->capture_default_str();
  }

  std::optional<NoiseModel> get() const {
    if (noisy || p1->count() || p2->count() || p_ro->count()) return model;
    return std::nullopt;
  }
};

// Options shared by run-all and the stage subcommands.
struct Options {
  RunConfig cfg;
  std::string mode = "cut";
  std::string backend = "auto";
  long long separator_ms = 60000;
  NoiseFlags noise;

  void finalize() {
    cfg.mode = parse_mode(mode);
    cfg.correlation.backend = parse_backend(backend);
    cfg.separator_time_limit = std::chrono::milliseconds(separator_ms);
    cfg.noise = noise.get();
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) cfg.output_dir = env;
  }
};

void add_generator_options(CLI::App* app, GeneratorSpec& g) {
  app->add_option("--n", g.n, "Vertex count")->capture_default_str();
  app->add_option("--m", g.m, "Edge count")->capture_default_str();
  app->add_option("--separator-size", g.separator_size, "Planted separator size")->capture_default_str();
  app->add_option("--gen-seed", g.seed, "Generator seed")->capture_default_str();
}

void add_separator_options(CLI::App* app, Options& o) {
  app->add_option("--balance-fraction", o.cfg.balance_fraction, "Largest side as a fraction of n")
      ->capture_default_str();
  app->add_option("--separator-time-limit-ms", o.separator_ms, "Separator search time limit")
      ->capture_default_str();
}

void add_correlation_options(CLI::App* app, Options& o) {
  app->add_option("--correlation-backend", o.backend, "auto, exhaustive or local-search")->capture_default_str();
  app->add_option("--correlation-budget", o.cfg.correlation.budget, "Local-search restarts")->capture_default_str();
  app->add_option("--correlation-keep", o.cfg.correlation.keep, "Local-search ensemble size")->capture_default_str();
}

void add_training_options(CLI::App* app, Options& o) {
  app->add_option("--p", o.cfg.p, "QAOA layers")->capture_default_str();
  app->add_option("--dt", o.cfg.dt, "Annealing schedule step")->capture_default_str();
  app->add_option("--optimizer-budget", o.cfg.optimizer_budget, "Maximum objective evaluations")
      ->capture_default_str();
}

void add_sampling_options(CLI::App* app, Options& o) {
  app->add_option("--mode", o.mode, "cut, uncut or classical-cut")->capture_default_str();
  app->add_option("--shots,-N", o.cfg.shots, "Number of samples")->capture_default_str();
  app->add_option("--trajectory-reuse", o.cfg.trajectory_reuse, "Samples per noisy trajectory")
      ->capture_default_str();
  o.noise.add(app);
}

void add_seed_option(CLI::App* app, Options& o) {
  app->add_option("--seed", o.cfg.seed, "Master seed")->capture_default_str();
}

void add_out_dir(CLI::App* app, Options& o) {
  app->add_option("--out-dir", o.cfg.output_dir, std::string("Output directory (") + kOutputDirEnv + " overrides)");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    write_file(path, text);
  }
}

// Values from a key=value file fill options not given on the command line.
void apply_config(CLI::App* app, const std::string& path) {
  if (!fs::exists(path)) throw ValidationError("config file not found: " + path);
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_file(path);
  } catch (const CLI::Error& e) {
    throw ValidationError("bad config file " + path + ": " + e.what());
  }
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    auto* opt = app->get_option_no_throw("--" + item.name);
    if (!opt || item.name == "config") throw ValidationError("unknown config key: " + item.name);
    if (opt->count() > 0) continue;
    try {
      for (const auto& v : item.inputs) opt->add_result(v);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ValidationError("config key " + item.name + ": " + e.what());
    }
  }
}

fs::path require_dir(const RunConfig& cfg) {
  if (cfg.output_dir.empty()) throw ValidationError("an output directory is required (--out-dir)");
  fs::create_directories(cfg.output_dir);
  return cfg.output_dir;
}

SignedSampleSet load_samples(const std::string& path, SampleFileMeta* meta = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  return read_samples_csv(in, meta);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wire-cut QAOA sampling for MaxCut"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  Options o;
  o.cfg.log = &std::cerr;

  // generate
  std::string out_path;
  auto* gen = app.add_subcommand("generate", "Generate a planted-separator instance");
  add_generator_options(gen, o.cfg.generator);
  gen->add_option("--out", out_path, "Instance file (default stdout)");

  // separate
  std::string instance_path;
  auto* sep = app.add_subcommand("separate", "Find a minimum balanced vertex separator");
  sep->add_option("--instance", instance_path, "Instance file")->required();
  add_separator_options(sep, o);
  sep->add_option("--out", out_path, "Decomposition JSON (default stdout)");

  // shrink
  std::string decomposition_path;
  auto* shr = app.add_subcommand("shrink", "Contract the separator to one vertex");
  shr->add_option("--instance", instance_path, "Instance file")->required();
  shr->add_option("--decomposition", decomposition_path, "Decomposition JSON")->required();
  add_correlation_options(shr, o);
  add_seed_option(shr, o);
  add_out_dir(shr, o);

  // train
  auto* trn = app.add_subcommand("train", "Train QAOA angles on a (shrunk) instance");
  trn->add_option("--instance", instance_path, "Instance file")->required();
  add_training_options(trn, o);
  trn->add_option("--out", out_path, "Parameter JSON (default stdout)");

  // sample
  std::string params_path;
  auto* smp = app.add_subcommand("sample", "Draw samples at the shrunk level");
  smp->add_option("--instance", instance_path, "Shrunk instance file")->required();
  smp->add_option("--decomposition", decomposition_path, "Shrunk decomposition JSON (cut modes)");
  smp->add_option("--params", params_path, "Parameter JSON (cut and uncut modes)");
  add_sampling_options(smp, o);
  add_training_options(smp, o);
  add_seed_option(smp, o);
  smp->add_option("--out", out_path, "Sample CSV (default stdout)");

  // analyze
  std::string trace_path, shrunk_path, samples_path, label_mode;
  auto* ana = app.add_subcommand("analyze", "Histograms and percentile metrics");
  ana->add_option("--instance", instance_path, "Original instance file")->required();
  ana->add_option("--trace", trace_path, "Shrink trace JSON")->required();
  ana->add_option("--shrunk-instance", shrunk_path, "Shrunk instance file")->required();
  ana->add_option("--samples", samples_path, "Sample CSV")->required();
  ana->add_option("--mode", label_mode, "Mode label recorded in the summary");
  add_out_dir(ana, o);

  // run-all
  auto* all = app.add_subcommand("run-all", "Run every stage end to end");
  std::string config_path;
  all->add_option("--config", config_path, "Flat key=value file with any of these options");
  all->add_option("--instance", o.cfg.instance_path, "Instance file (otherwise generated)");
  add_generator_options(all, o.cfg.generator);
  add_separator_options(all, o);
  add_correlation_options(all, o);
  add_training_options(all, o);
  add_sampling_options(all, o);
  add_seed_option(all, o);
  add_out_dir(all, o);
  bool quiet = false;
  all->add_flag("--quiet", quiet, "Do not print the summary");

  // compare
  std::vector<std::string> summaries;
  auto* cmp = app.add_subcommand("compare", "Tabulate several run summaries");
  cmp->add_option("summaries", summaries, "summary.json files")->required();
  cmp->add_option("--out", out_path, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*all && !config_path.empty()) apply_config(all, config_path);
    o.finalize();
    if (*gen) {
      emit(out_path, write_instance(load_instance(o.cfg)));
    } else if (*sep) {
      auto inst = parse_instance(read_file(instance_path));
      auto dec = find_separator(inst, o.cfg.balance_fraction, o.cfg.separator_time_limit);
      emit(out_path, to_json(dec).dump(2) + "\n");
    } else if (*shr) {
      auto inst = parse_instance(read_file(instance_path));
      auto dec = decomposition_from_json(read_json(decomposition_path));
      if (!verify_separator(inst, dec)) throw ValidationError("decomposition is not a valid separator");
      o.cfg.validate();
      auto res = shrink_stage(inst, dec, o.cfg.correlation, stage_seed(o.cfg.seed, SeedStage::kCorrelation));
      auto dir = require_dir(o.cfg);
      write_file(dir / "shrunk_instance.txt", write_instance(res.shrunk));
      write_file(dir / "trace.json", to_json(res.trace).dump(2) + "\n");
      write_file(dir / "shrunk_decomposition.json", to_json(res.decomposition).dump(2) + "\n");
    } else if (*trn) {
      auto inst = parse_instance(read_file(instance_path));
      NelderMeadOptions opt;
      opt.max_evaluations = o.cfg.optimizer_budget;
      auto r = train(inst, o.cfg.p, o.cfg.dt, opt);
      std::cerr << "[qcut] train E0=" << r.initial_expectation << " E=" << r.final_expectation << '\n';
      emit(out_path, to_json(r.params).dump(2) + "\n");
    } else if (*smp) {
      o.cfg.validate();
      auto shrunk = parse_instance(read_file(instance_path));
      SeparatorDecomposition dec;
      if (o.cfg.mode != RunMode::kUncut) {
        if (decomposition_path.empty()) throw ValidationError("--decomposition is required for cut modes");
        dec = decomposition_from_json(read_json(decomposition_path));
      }
      QaoaParams params = init_schedule(o.cfg.p, o.cfg.dt);
      if (o.cfg.mode != RunMode::kClassicalCut) {
        if (params_path.empty()) throw ValidationError("--params is required for cut and uncut modes");
        params = params_from_json(read_json(params_path));
      }
      std::string digest;
      auto set = sample_stage(shrunk, dec, params, o.cfg, &digest);
      std::ostringstream text;
      write_samples_csv(text, set, {set.kappa, o.cfg.seed, digest});
      emit(out_path, text.str());
    } else if (*ana) {
      auto original = parse_instance(read_file(instance_path));
      auto shrunk = parse_instance(read_file(shrunk_path));
      auto trace = trace_from_json(read_json(trace_path));
      auto samples = load_samples(samples_path);
      auto rep = analyze_samples(original, trace, shrunk, samples);
      if (!label_mode.empty()) rep.summary["mode"] = label_mode;
      auto dir = require_dir(o.cfg);
      write_analysis(dir, rep, original, shrunk);
      std::cout << rep.summary.dump(2) << '\n';
    } else if (*all) {
      auto rep = run_pipeline(o.cfg);
      if (!quiet) std::cout << rep.summary.dump(2) << '\n';
    } else if (*cmp) {
      std::vector<nlohmann::json> reports;
      for (const auto& s : summaries) reports.push_back(read_json(s));
      emit(out_path, compare_runs(reports));
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

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

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "qcut/errors.hpp"
#include "qcut/graph.hpp"
#include "qcut/shrink.hpp"
#include "qcut/wirecut.hpp"

namespace qcut {

/// Weight per exact objective value. Signed weights are allowed until
/// clamp_normalize is applied.
struct ObjectiveHistogram {
  std::map<Rational, double> bins;
  /// Number of samples that landed in each bin, regardless of sign.
  std::map<Rational, std::size_t> counts;
  double total_weight = 0.0;
  bool normalized = false;
  /// Negative weight removed by clamp_normalize (as a positive number).
  double clamped_negative_mass = 0.0;
  std::size_t num_samples = 0;
  double kappa = 1.0;
};

/// Each sample is expanded through `trace` when given, evaluated exactly on
/// `inst` and added to its objective bin with weight sign * kappa / N.
/// Unsigned sample sets (kappa 1, all signs +1) therefore sum to exactly 1.
inline ObjectiveHistogram histogram_from_samples(const SignedSampleSet& set, const MaxCutInstance& inst,
                                                 const ShrinkTrace* trace = nullptr) {
  int expected = trace ? trace->shrunk_n() : inst.num_vertices();
  if (set.num_bits != expected)
    throw ValidationError("samples have " + std::to_string(set.num_bits) + " bits, expected " +
                          std::to_string(expected));
  if (trace && trace->original_n != inst.num_vertices())
    throw ValidationError("shrink trace does not belong to this instance");
  if (inst.num_vertices() > 64) throw ValidationError("histograms support at most 64 vertices");
  ObjectiveHistogram h;
  h.num_samples = set.samples.size();
  h.kappa = set.kappa;
  h.normalized = set.kappa == 1.0;
  if (set.samples.empty()) return h;
  ScaledObjective obj(inst);
  std::unordered_map<std::uint64_t, std::int64_t> cache;
  const double w = set.kappa / static_cast<double>(set.samples.size());
  for (const auto& s : set.samples) {
    auto it = cache.find(s.bits);
    if (it == cache.end()) {
      std::uint64_t mask = s.bits;
      if (trace) mask = mask_from_bits(expand_solution(*trace, bits_from_mask(s.bits, set.num_bits)));
      it = cache.emplace(s.bits, obj.value(mask)).first;
    }
    Rational c = obj.to_rational(it->second);
    h.bins[c] += w * s.sign;
    h.counts[c] += 1;
  }
  for (const auto& [c, weight] : h.bins) h.total_weight += weight;
  return h;
}

/// Plain samples: every sample weighs 1/N.
inline ObjectiveHistogram histogram_from_samples(const std::vector<std::uint64_t>& samples, int num_bits,
                                                 const MaxCutInstance& inst,
                                                 const ShrinkTrace* trace = nullptr) {
  SignedSampleSet set;
  set.num_bits = num_bits;
  set.kappa = 1.0;
  for (auto x : samples) set.samples.push_back({x, 1});
  return histogram_from_samples(set, inst, trace);
}

/// r = (c - c0) / (c* - c0) with c0 the mean objective of uniformly random
/// assignments (sum of edge weights / 2 for plain MaxCut).
inline Rational normalized_objective(const Rational& c, const MaxCutInstance& inst, const Rational& c_star) {
  Rational c0 = inst.uniform_expectation();
  if (c_star <= c0) throw ValidationError("optimum does not exceed the random-assignment mean");
  return (c - c0) / (c_star - c0);
}

/// Drop negative bins and rescale the rest to total weight 1.
inline ObjectiveHistogram clamp_normalize(const ObjectiveHistogram& h) {
  ObjectiveHistogram out = h;
  out.bins.clear();
  double positive = 0.0;
  double negative = 0.0;
  for (const auto& [c, w] : h.bins) {
    if (w > 0.0) {
      out.bins[c] = w;
      positive += w;
    } else {
      negative -= w;
    }
  }
  if (positive <= 0.0) throw ValidationError("histogram has no positive weight");
  for (auto& [c, w] : out.bins) w /= positive;
  out.total_weight = 1.0;
  out.normalized = true;
  out.clamped_negative_mass = h.clamped_negative_mass + negative;
  return out;
}

/// Smallest objective whose cumulative weight reaches q.
inline Rational percentile(const ObjectiveHistogram& h, double q) {
  if (!h.normalized) throw ValidationError("percentile needs a normalized histogram");
  if (!(q > 0.0 && q < 1.0)) throw ValidationError("percentile level must lie in (0, 1)");
  if (h.bins.empty()) throw ValidationError("empty histogram");
  double acc = 0.0;
  for (const auto& [c, w] : h.bins) {
    acc += w;
    if (acc >= q - 1e-12) return c;
  }
  return h.bins.rbegin()->first;
}

struct HistogramSummary {
  double best_r = 0.0;
  double min_observed_r = 0.0;
  double mean_r = 0.0;
  Rational p95_objective;
  double p95_r = 0.0;
  double negative_mass_clamped = 0.0;
};

/// best_r / min_observed_r range over every sampled objective (any sign);
/// mean and 95th percentile come from the clamped, normalized histogram.
inline HistogramSummary summarize(const ObjectiveHistogram& h, const MaxCutInstance& inst, const Rational& c_star) {
  if (h.counts.empty()) throw ValidationError("cannot summarize an empty histogram");
  auto r = [&](const Rational& c) { return to_double(normalized_objective(c, inst, c_star)); };
  HistogramSummary s;
  s.best_r = r(h.counts.rbegin()->first);
  s.min_observed_r = r(h.counts.begin()->first);
  ObjectiveHistogram clamped = clamp_normalize(h);
  for (const auto& [c, w] : clamped.bins) s.mean_r += w * r(c);
  s.p95_objective = percentile(clamped, 0.95);
  s.p95_r = r(s.p95_objective);
  s.negative_mass_clamped = clamped.clamped_negative_mass;
  return s;
}

/// The same samples with signs discarded: the frequency with which each
/// objective value was actually drawn.
inline ObjectiveHistogram unsigned_histogram(const ObjectiveHistogram& h) {
  ObjectiveHistogram out;
  out.counts = h.counts;
  out.num_samples = h.num_samples;
  out.kappa = 1.0;
  out.normalized = true;
  for (const auto& [c, n] : h.counts) out.bins[c] = static_cast<double>(n) / static_cast<double>(h.num_samples);
  out.total_weight = 1.0;
  return out;
}

inline nlohmann::json to_json(const HistogramSummary& s) {
  return {{"best_r", s.best_r},
          {"min_observed_r", s.min_observed_r},
          {"mean_r", s.mean_r},
          {"p95_objective", to_double(s.p95_objective)},
          {"p95_r", s.p95_r},
          {"negative_mass_clamped", s.negative_mass_clamped}};
}

/// "objective,weight" rows after a metadata header.
inline void write_histogram_csv(std::ostream& out, const ObjectiveHistogram& h, const std::string& instance_digest) {
  double clamped_fraction = h.clamped_negative_mass;
  out << "# instance_digest=" << instance_digest << '\n'
      << "# N=" << h.num_samples << '\n'
      << "# kappa=" << h.kappa << '\n'
      << "# clamped_mass_fraction=" << clamped_fraction << '\n'
      << "objective,weight\n";
  out.precision(17);
  for (const auto& [c, w] : h.bins) out << format_rational(c) << ',' << w << '\n';
}

}  // namespace qcut

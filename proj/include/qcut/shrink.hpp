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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qcut/errors.hpp"
#include "qcut/graph.hpp"
#include "qcut/rng.hpp"
#include "qcut/separator.hpp"

namespace qcut {

/// Vertex pair, always stored with first < second.
using VertexPair = std::pair<int, int>;

inline VertexPair make_pair_key(int i, int j) { return {std::min(i, j), std::max(i, j)}; }

/// Estimated spin correlation <s_i s_j> with s = 1 - 2x, in [-1, 1].
using CorrelationMap = std::map<VertexPair, double>;

enum class CorrelationBackend { kAuto, kExhaustive, kLocalSearch };

struct CorrelationOptions {
  CorrelationBackend backend = CorrelationBackend::kAuto;
  /// Local-search restarts.
  int budget = 200;
  /// Local-search ensemble size: the best `keep` restart outcomes.
  int keep = 32;
  std::uint64_t seed = 0;
};

/// Largest instance the exhaustive backend accepts.
inline constexpr int kExhaustiveCorrelationLimit = 24;
/// Above this size kAuto switches to local search.
inline constexpr int kAutoExhaustiveLimit = 16;

namespace detail {

inline double spin_product(std::uint64_t mask, const VertexPair& p) {
  return (((mask >> p.first) ^ (mask >> p.second)) & 1U) ? -1.0 : 1.0;
}

inline CorrelationMap correlations_from_ensemble(const std::vector<std::uint64_t>& ensemble,
                                                 const std::vector<VertexPair>& pairs) {
  CorrelationMap out;
  for (const auto& p : pairs) {
    double sum = 0.0;
    for (auto mask : ensemble) sum += spin_product(mask, p);
    out[p] = ensemble.empty() ? 0.0 : sum / static_cast<double>(ensemble.size());
  }
  return out;
}

// Average over all optimal assignments.
inline CorrelationMap exhaustive_correlations(const MaxCutInstance& inst,
                                              const std::vector<VertexPair>& pairs) {
  int n = inst.num_vertices();
  if (n > kExhaustiveCorrelationLimit)
    throw ValidationError("exhaustive correlations limited to " +
                          std::to_string(kExhaustiveCorrelationLimit) + " vertices");
  ScaledObjective obj(inst);
  std::uint64_t count = std::uint64_t{1} << n;
  std::int64_t best = obj.value(0);
  for (std::uint64_t x = 1; x < count; ++x) best = std::max(best, obj.value(x));
  std::vector<double> sums(pairs.size(), 0.0);
  double optima = 0.0;
  for (std::uint64_t x = 0; x < count; ++x) {
    if (obj.value(x) != best) continue;
    optima += 1.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) sums[k] += spin_product(x, pairs[k]);
  }
  CorrelationMap out;
  for (std::size_t k = 0; k < pairs.size(); ++k) out[pairs[k]] = sums[k] / optima;
  return out;
}

// First-improvement one-flip ascent from a random start.
inline std::uint64_t local_ascent(const ScaledObjective& obj,
                                  const std::vector<std::vector<std::pair<int, std::int64_t>>>& adj,
                                  Rng& rng) {
  int n = obj.num_vertices();
  std::uint64_t x = 0;
  for (int v = 0; v < n; ++v)
    if (rng.next() & 1U) x |= std::uint64_t{1} << v;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int v = 0; v < n; ++v) {
      std::uint64_t xv = (x >> v) & 1U;
      // Flipping v toggles every incident edge and the linear term.
      std::int64_t gain = xv ? -obj.linear()[static_cast<std::size_t>(v)]
                             : obj.linear()[static_cast<std::size_t>(v)];
      for (const auto& [u, w] : adj[static_cast<std::size_t>(v)])
        gain += (((x >> u) & 1U) == xv) ? w : -w;
      if (gain > 0) {
        x ^= std::uint64_t{1} << v;
        improved = true;
      }
    }
  }
  return x;
}

inline CorrelationMap local_search_correlations(const MaxCutInstance& inst,
                                                const std::vector<VertexPair>& pairs,
                                                const CorrelationOptions& opt) {
  if (inst.num_vertices() > 64) throw ValidationError("local search supports at most 64 vertices");
  ScaledObjective obj(inst);
  std::vector<std::vector<std::pair<int, std::int64_t>>> adj(
      static_cast<std::size_t>(inst.num_vertices()));
  for (const auto& e : obj.edges()) {
    adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
    adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.w);
  }
  // (value, restart) so that equal values keep restart order.
  std::vector<std::tuple<std::int64_t, int, std::uint64_t>> outcomes;
  for (int r = 0; r < opt.budget; ++r) {
    Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(r)));
    std::uint64_t x = local_ascent(obj, adj, rng);
    outcomes.emplace_back(obj.value(x), r, x);
  }
  std::stable_sort(outcomes.begin(), outcomes.end(), [](const auto& a, const auto& b) {
    return std::get<0>(a) > std::get<0>(b);
  });
  std::vector<std::uint64_t> ensemble;
  for (std::size_t k = 0; k < outcomes.size() && static_cast<int>(k) < opt.keep; ++k)
    ensemble.push_back(std::get<2>(outcomes[k]));
  return correlations_from_ensemble(ensemble, pairs);
}

}  // namespace detail

/// Correlation estimates for the requested pairs over an ensemble of good
/// solutions: every optimum (exhaustive) or the best restarts of a one-flip
/// local search. Deterministic for a fixed seed.
inline CorrelationMap estimate_correlations(const MaxCutInstance& inst,
                                            const std::vector<VertexPair>& pairs,
                                            const CorrelationOptions& opt = {}) {
  if (opt.budget < 1) throw ValidationError("correlation budget must be at least 1");
  if (pairs.empty()) return {};
  std::vector<VertexPair> keys;
  for (const auto& p : pairs) {
    if (p.first == p.second || p.first < 0 || p.second < 0 || p.first >= inst.num_vertices() ||
        p.second >= inst.num_vertices())
      throw ValidationError("invalid vertex pair");
    keys.push_back(make_pair_key(p.first, p.second));
  }
  CorrelationBackend backend = opt.backend;
  if (backend == CorrelationBackend::kAuto)
    backend = inst.num_vertices() <= kAutoExhaustiveLimit ? CorrelationBackend::kExhaustive
                                                          : CorrelationBackend::kLocalSearch;
  if (backend == CorrelationBackend::kExhaustive) return detail::exhaustive_correlations(inst, keys);
  return detail::local_search_correlations(inst, keys, opt);
}

/// All pairs inside a vertex set.
inline std::vector<VertexPair> pairs_within(const std::vector<int>& group) {
  std::vector<VertexPair> out;
  for (std::size_t i = 0; i < group.size(); ++i)
    for (std::size_t j = i + 1; j < group.size(); ++j) out.push_back(make_pair_key(group[i], group[j]));
  return out;
}

/// `removed` was merged into `kept` assuming x_removed = x_kept (sigma = +1)
/// or x_removed = 1 - x_kept (sigma = -1). Ids refer to the original instance.
struct MergeRecord {
  int kept = 0;
  int removed = 0;
  int sigma = 1;

  friend bool operator==(const MergeRecord&, const MergeRecord&) = default;
};

struct ShrinkTrace {
  int original_n = 0;
  std::vector<MergeRecord> records;
  /// vertex_map[k] is the original id of shrunk vertex k.
  std::vector<int> vertex_map;
  /// Shrunk offset minus original offset.
  Rational offset_delta = 0;

  int shrunk_n() const { return static_cast<int>(vertex_map.size()); }

  friend bool operator==(const ShrinkTrace&, const ShrinkTrace&) = default;
};

struct ShrinkResult {
  MaxCutInstance shrunk;
  ShrinkTrace trace;
  /// The input decomposition relabelled onto the shrunk instance; S holds
  /// the single surviving separator vertex.
  SeparatorDecomposition decomposition;
};

/// Lift a shrunk assignment back to the original vertices.
inline Bits expand_solution(const ShrinkTrace& trace, const Bits& shrunk) {
  if (shrunk.size() != trace.vertex_map.size())
    throw ValidationError("shrunk assignment has length " + std::to_string(shrunk.size()) +
                          ", expected " + std::to_string(trace.vertex_map.size()));
  Bits x(static_cast<std::size_t>(trace.original_n), 0);
  for (std::size_t k = 0; k < shrunk.size(); ++k)
    x[static_cast<std::size_t>(trace.vertex_map[k])] = shrunk[k];
  for (auto it = trace.records.rbegin(); it != trace.records.rend(); ++it) {
    auto kept = x[static_cast<std::size_t>(it->kept)];
    x[static_cast<std::size_t>(it->removed)] = it->sigma > 0 ? kept : static_cast<std::uint8_t>(1 - kept);
  }
  return x;
}

/// Relabel a decomposition of the original graph onto the shrunk graph.
inline SeparatorDecomposition map_decomposition(const ShrinkTrace& trace,
                                                const SeparatorDecomposition& dec) {
  std::vector<int> to_shrunk(static_cast<std::size_t>(trace.original_n), -1);
  for (std::size_t k = 0; k < trace.vertex_map.size(); ++k)
    to_shrunk[static_cast<std::size_t>(trace.vertex_map[k])] = static_cast<int>(k);
  SeparatorDecomposition out;
  out.balance_bound = dec.balance_bound;
  auto relabel = [&](const std::vector<int>& in, std::vector<int>& dst) {
    for (int v : in)
      if (int k = to_shrunk[static_cast<std::size_t>(v)]; k >= 0) dst.push_back(k);
    std::sort(dst.begin(), dst.end());
  };
  relabel(dec.a, out.a);
  relabel(dec.b, out.b);
  relabel(dec.s, out.s);
  return out;
}

/// Contract the separator to one vertex with |S| - 1 correlation-guided
/// merges. Each step merges the separator pair with the largest |C| (ties: the
/// larger C, then the smaller pair) keeping the lower id. Weights and the
/// offset are rewritten exactly so that
///   cut_value(original, expand_solution(trace, y)) == cut_value(shrunk, y).
inline ShrinkResult shrink_separator(const MaxCutInstance& inst, const SeparatorDecomposition& dec,
                                     const CorrelationMap& correlations) {
  if (dec.s.empty()) throw ValidationError("cannot shrink an empty separator");
  int n = inst.num_vertices();
  std::map<VertexPair, Rational> edges;
  for (const Edge& e : inst.edges()) edges[{e.u, e.v}] = e.w;
  std::vector<Rational> linear = inst.linear();
  Rational offset = inst.offset();
  std::vector<bool> alive(static_cast<std::size_t>(n), true);

  ShrinkTrace trace;
  trace.original_n = n;
  std::vector<int> group = dec.s;
  std::sort(group.begin(), group.end());

  while (group.size() > 1) {
    const VertexPair* best = nullptr;
    double best_c = 0.0;
    std::vector<VertexPair> candidates = pairs_within(group);
    for (const auto& p : candidates) {
      auto it = correlations.find(p);
      if (it == correlations.end())
        throw ValidationError("missing correlation for pair (" + std::to_string(p.first) + ", " +
                              std::to_string(p.second) + ")");
      double c = it->second;
      if (!best || std::abs(c) > std::abs(best_c) ||
          (std::abs(c) == std::abs(best_c) && c > best_c)) {
        best = &it->first;
        best_c = c;
      }
    }
    int kept = best->first;
    int removed = best->second;
    int sigma = best_c >= 0.0 ? 1 : -1;
    Rational flip = sigma < 0 ? Rational(1) : Rational(0);

    std::vector<std::pair<VertexPair, Rational>> touching;
    for (const auto& [key, w] : edges)
      if (key.first == removed || key.second == removed) touching.emplace_back(key, w);
    for (const auto& [key, w] : touching) {
      edges.erase(key);
      int other = key.first == removed ? key.second : key.first;
      offset += w * flip;  // w (1 - sigma) / 2
      if (other == kept) continue;
      auto k = make_pair_key(kept, other);
      edges[k] += w * sigma;
      if (edges[k] == Rational(0)) edges.erase(k);
    }
    Rational& h_removed = linear[static_cast<std::size_t>(removed)];
    linear[static_cast<std::size_t>(kept)] += h_removed * sigma;
    offset += h_removed * flip;
    h_removed = 0;

    alive[static_cast<std::size_t>(removed)] = false;
    trace.records.push_back({kept, removed, sigma});
    group.erase(std::find(group.begin(), group.end(), removed));
  }

  std::vector<int> to_shrunk(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v)
    if (alive[static_cast<std::size_t>(v)]) {
      to_shrunk[static_cast<std::size_t>(v)] = static_cast<int>(trace.vertex_map.size());
      trace.vertex_map.push_back(v);
    }
  std::vector<Edge> shrunk_edges;
  for (const auto& [key, w] : edges)
    shrunk_edges.push_back({to_shrunk[static_cast<std::size_t>(key.first)],
                            to_shrunk[static_cast<std::size_t>(key.second)], w});
  std::vector<Rational> shrunk_linear;
  for (int v : trace.vertex_map) shrunk_linear.push_back(linear[static_cast<std::size_t>(v)]);
  trace.offset_delta = offset - inst.offset();

  ShrinkResult result{MaxCutInstance(static_cast<int>(trace.vertex_map.size()), shrunk_edges,
                                     std::move(shrunk_linear), offset),
                      trace, {}};
  result.decomposition = map_decomposition(result.trace, dec);
  return result;
}

inline nlohmann::json to_json(const ShrinkTrace& trace) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : trace.records)
    records.push_back({{"kept", r.kept}, {"removed", r.removed}, {"sigma", r.sigma}});
  return {{"original_n", trace.original_n},
          {"records", records},
          {"vertex_map", trace.vertex_map},
          {"offset_delta", format_rational(trace.offset_delta)}};
}

inline ShrinkTrace trace_from_json(const nlohmann::json& j) {
  ShrinkTrace trace;
  try {
    trace.original_n = j.at("original_n").get<int>();
    for (const auto& r : j.at("records"))
      trace.records.push_back({r.at("kept").get<int>(), r.at("removed").get<int>(),
                               r.at("sigma").get<int>()});
    trace.vertex_map = j.at("vertex_map").get<std::vector<int>>();
    auto delta = parse_rational(j.at("offset_delta").get<std::string>());
    if (!delta) throw ValidationError("bad offset_delta in shrink trace");
    trace.offset_delta = *delta;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad shrink trace JSON: ") + e.what());
  }
  for (const auto& r : trace.records)
    if (r.sigma != 1 && r.sigma != -1) throw ValidationError("merge sign must be +1 or -1");
  return trace;
}

}  // namespace qcut

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
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "qcut/errors.hpp"
#include "qcut/graph.hpp"
#include "qcut/rng.hpp"

namespace qcut {

/// A generated instance together with the communities it was built from.
struct PlantedInstance {
  MaxCutInstance instance;
  std::vector<int> community_a;
  std::vector<int> community_b;
  std::vector<int> separator;
};

/// Connected unit-weight graph made of two communities of near-equal size
/// that touch only through `separator_size` planted separator vertices.
/// Each community is grown from a random spanning tree, every separator vertex
/// gets one edge into each community, and the remaining edges are drawn
/// uniformly from the pairs that do not join the two communities.
inline PlantedInstance generate_planted_instance(int n, int m, int separator_size,
                                                 std::uint64_t seed) {
  if (n < 3) throw ValidationError("generator needs at least 3 vertices");
  if (separator_size < 1) throw ValidationError("separator size must be at least 1");
  if (m < n - 1) throw ValidationError("cannot connect " + std::to_string(n) + " nodes with " +
                                       std::to_string(m) + (m == 1 ? " edge" : " edges"));
  int rest = n - separator_size;
  if (rest < 2) throw ValidationError("separator leaves fewer than two community vertices");
  int size_a = (rest + 1) / 2;
  int size_b = rest - size_a;
  long long min_edges = (size_a - 1) + (size_b - 1) + 2LL * separator_size;
  auto pairs = [](long long k) { return k * (k - 1) / 2; };
  long long max_edges = pairs(size_a) + pairs(size_b) + pairs(separator_size) +
                        static_cast<long long>(separator_size) * rest;
  if (m < min_edges)
    throw ValidationError("need at least " + std::to_string(min_edges) +
                          " edges to connect both communities through the separator");
  if (m > max_edges)
    throw ValidationError("at most " + std::to_string(max_edges) +
                          " edges fit without joining the communities");

  Rng rng(seed);
  // Random relabelling so the planted roles are not tied to vertex ids.
  std::vector<int> label(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) label[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(label[static_cast<std::size_t>(i)],
              label[rng.below(static_cast<std::uint64_t>(i) + 1)]);

  PlantedInstance out;
  for (int i = 0; i < size_a; ++i) out.community_a.push_back(label[static_cast<std::size_t>(i)]);
  for (int i = size_a; i < rest; ++i) out.community_b.push_back(label[static_cast<std::size_t>(i)]);
  for (int i = rest; i < n; ++i) out.separator.push_back(label[static_cast<std::size_t>(i)]);

  std::set<std::pair<int, int>> chosen;
  auto add = [&](int u, int v) { chosen.insert({std::min(u, v), std::max(u, v)}); };
  auto grow_tree = [&](const std::vector<int>& group) {
    for (std::size_t i = 1; i < group.size(); ++i) add(group[i], group[rng.below(i)]);
  };
  grow_tree(out.community_a);
  grow_tree(out.community_b);
  for (int s : out.separator) {
    add(s, out.community_a[rng.below(out.community_a.size())]);
    add(s, out.community_b[rng.below(out.community_b.size())]);
  }

  std::vector<int> side(static_cast<std::size_t>(n), 0);
  for (int v : out.community_a) side[static_cast<std::size_t>(v)] = 1;
  for (int v : out.community_b) side[static_cast<std::size_t>(v)] = 2;
  std::vector<std::pair<int, int>> pool;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      int su = side[static_cast<std::size_t>(u)];
      int sv = side[static_cast<std::size_t>(v)];
      if (su * sv == 2) continue;  // one endpoint in each community
      if (!chosen.count({u, v})) pool.emplace_back(u, v);
    }
  for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
  for (std::size_t i = 0; chosen.size() < static_cast<std::size_t>(m); ++i)
    chosen.insert(pool[i]);

  std::vector<Edge> edges;
  for (const auto& [u, v] : chosen) edges.push_back({u, v, Rational(1)});
  out.instance = MaxCutInstance(n, edges);
  for (auto* group : {&out.community_a, &out.community_b, &out.separator})
    std::sort(group->begin(), group->end());
  return out;
}

inline MaxCutInstance generate_instance(int n, int m, int separator_size, std::uint64_t seed) {
  return generate_planted_instance(n, m, separator_size, seed).instance;
}

}  // namespace qcut

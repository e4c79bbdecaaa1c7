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
#include <array>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "qcut/graph.hpp"

namespace qcut {

struct ExactSolution {
  Rational best_value;
  Bits best_assignment;
  /// True when the search finished, i.e. best_value is the optimum.
  bool proven = false;
};

namespace detail {

// Depth-first branch and bound over vertices ordered by decreasing degree.
//
// For an undecided vertex v, gain[v][b] is the objective contributed by
// setting x_v = b against the already decided neighbours (plus h_v when
// b = 1). The bound adds max(gain[v][0], gain[v][1]) for every undecided
// vertex and the positive weight of edges with both endpoints undecided.
class MaxCutBranchAndBound {
 public:
  MaxCutBranchAndBound(const MaxCutInstance& inst,
                       std::optional<std::chrono::milliseconds> time_limit)
      : obj_(inst), n_(inst.num_vertices()), time_limit_(time_limit) {
    auto n = static_cast<std::size_t>(n_);
    std::vector<int> degree(n, 0);
    adj_.resize(n);
    for (const auto& e : obj_.edges()) {
      adj_[static_cast<std::size_t>(e.u)].push_back({e.v, e.w});
      adj_[static_cast<std::size_t>(e.v)].push_back({e.u, e.w});
      ++degree[static_cast<std::size_t>(e.u)];
      ++degree[static_cast<std::size_t>(e.v)];
    }
    order_.resize(n);
    for (std::size_t v = 0; v < n; ++v) order_[v] = static_cast<int>(v);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)];
    });
    pos_.resize(n);
    for (std::size_t d = 0; d < n; ++d) pos_[static_cast<std::size_t>(order_[d])] = static_cast<int>(d);
    // free_positive_[d]: positive weight of edges whose endpoints both sit at
    // positions >= d.
    free_positive_.assign(n + 1, 0);
    for (const auto& e : obj_.edges()) {
      if (e.w <= 0) continue;
      int first = std::min(pos_[static_cast<std::size_t>(e.u)], pos_[static_cast<std::size_t>(e.v)]);
      for (int d = 0; d <= first; ++d) free_positive_[static_cast<std::size_t>(d)] += e.w;
    }
    gain_.assign(n, {0, 0});
    for (std::size_t v = 0; v < n; ++v) gain_[v][1] = obj_.linear()[v];
    value_.assign(n, -1);
    symmetric_ = !inst.has_linear_terms();
  }

  ExactSolution solve() {
    start_ = std::chrono::steady_clock::now();
    best_ = std::numeric_limits<std::int64_t>::min();
    best_mask_ = 0;
    if (n_ == 0) {
      best_ = obj_.offset();
    } else {
      search(0, obj_.offset(), 0);
    }
    if (best_ == std::numeric_limits<std::int64_t>::min()) {
      best_ = obj_.value(0);
      best_mask_ = 0;
    }
    ExactSolution out;
    out.best_value = obj_.to_rational(best_);
    out.best_assignment = bits_from_mask(best_mask_, n_);
    out.proven = !timed_out_;
    return out;
  }

 private:
  struct Neighbor {
    int v;
    std::int64_t w;
  };

  bool out_of_time() {
    if (!time_limit_ || (++nodes_ & 0xfff) != 0) return timed_out_;
    if (std::chrono::steady_clock::now() - start_ > *time_limit_) timed_out_ = true;
    return timed_out_;
  }

  std::int64_t bound(int depth, std::int64_t current) const {
    std::int64_t b = current + free_positive_[static_cast<std::size_t>(depth)];
    for (int d = depth; d < n_; ++d) {
      const auto& g = gain_[static_cast<std::size_t>(order_[static_cast<std::size_t>(d)])];
      b += std::max(g[0], g[1]);
    }
    return b;
  }

  void assign(int v, int b, int sign) {
    for (const auto& nb : adj_[static_cast<std::size_t>(v)])
      if (value_[static_cast<std::size_t>(nb.v)] < 0)
        gain_[static_cast<std::size_t>(nb.v)][static_cast<std::size_t>(1 - b)] += sign * nb.w;
  }

  void search(int depth, std::int64_t current, std::uint64_t mask) {
    if (depth == n_) {
      if (current > best_) {
        best_ = current;
        best_mask_ = mask;
      }
      return;
    }
    if (out_of_time()) return;
    if (best_ != std::numeric_limits<std::int64_t>::min() && bound(depth, current) <= best_) return;

    int v = order_[static_cast<std::size_t>(depth)];
    const auto g = gain_[static_cast<std::size_t>(v)];
    int first = g[1] > g[0] ? 1 : 0;
    int choices = (depth == 0 && symmetric_) ? 1 : 2;
    if (depth == 0 && symmetric_) first = 0;
    for (int c = 0; c < choices; ++c) {
      int b = c == 0 ? first : 1 - first;
      value_[static_cast<std::size_t>(v)] = b;
      assign(v, b, +1);
      search(depth + 1, current + g[static_cast<std::size_t>(b)],
             b ? mask | (std::uint64_t{1} << v) : mask);
      assign(v, b, -1);
      value_[static_cast<std::size_t>(v)] = -1;
    }
  }

  ScaledObjective obj_;
  int n_;
  std::optional<std::chrono::milliseconds> time_limit_;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<int> order_;
  std::vector<int> pos_;
  std::vector<std::int64_t> free_positive_;
  std::vector<std::array<std::int64_t, 2>> gain_;
  std::vector<int> value_;
  bool symmetric_ = false;

  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
  std::int64_t best_ = 0;
  std::uint64_t best_mask_ = 0;
};

}  // namespace detail

/// Maximum objective by branch and bound. Without a time limit the result is
/// always proven; with one, an unfinished search returns its incumbent.
inline ExactSolution solve_exact(const MaxCutInstance& inst,
                                 std::optional<std::chrono::milliseconds> time_limit = std::nullopt) {
  if (inst.num_vertices() > 64) throw ValidationError("solve_exact supports at most 64 vertices");
  return detail::MaxCutBranchAndBound(inst, time_limit).solve();
}

}  // namespace qcut

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
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "qcut/errors.hpp"
#include "qcut/graph.hpp"

namespace qcut {

/// Vertex partition A | S | B with no edge between A and B.
struct SeparatorDecomposition {
  std::vector<int> a;
  std::vector<int> b;
  std::vector<int> s;
  /// Largest allowed |A| or |B|.
  int balance_bound = 0;

  friend bool operator==(const SeparatorDecomposition&, const SeparatorDecomposition&) = default;
};

inline constexpr double kDefaultBalanceFraction = 0.6;

/// ceil(fraction * n), tolerant of the rounding in products like 0.6 * 10.
inline int balance_bound_for(double balance_fraction, int n) {
  return static_cast<int>(std::ceil(balance_fraction * n - 1e-9));
}

inline bool verify_separator(const MaxCutInstance& inst, const SeparatorDecomposition& dec) {
  int n = inst.num_vertices();
  if (dec.a.empty() || dec.b.empty()) return false;
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int tag = 0;
  for (const auto* group : {&dec.a, &dec.b, &dec.s}) {
    for (int v : *group) {
      if (v < 0 || v >= n || label[static_cast<std::size_t>(v)] != -1) return false;
      label[static_cast<std::size_t>(v)] = tag;
    }
    ++tag;
  }
  if (std::find(label.begin(), label.end(), -1) != label.end()) return false;
  for (const Edge& e : inst.edges()) {
    int lu = label[static_cast<std::size_t>(e.u)];
    int lv = label[static_cast<std::size_t>(e.v)];
    if (lu + lv == 1) return false;  // one in A, one in B
  }
  return static_cast<int>(std::max(dec.a.size(), dec.b.size())) <= dec.balance_bound;
}

namespace detail {

inline std::vector<int> mask_to_list(std::uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

// Complete search for a minimum balanced vertex separator.
//
// Candidate separators are enumerated by increasing size and, within a size,
// in lexicographic order. For a fixed S the connected components of G - S
// must each go wholly to A or to B; a subset-sum over component sizes finds
// the most balanced feasible split. The first size with any feasible split is
// the minimum, which certifies optimality.
class SeparatorSearch {
 public:
  SeparatorSearch(const MaxCutInstance& inst, int balance_bound,
                  std::optional<std::chrono::milliseconds> time_limit)
      : n_(inst.num_vertices()), bound_(balance_bound), time_limit_(time_limit) {
    adj_.assign(static_cast<std::size_t>(n_), 0);
    for (const Edge& e : inst.edges()) {
      adj_[static_cast<std::size_t>(e.u)] |= std::uint64_t{1} << e.v;
      adj_[static_cast<std::size_t>(e.v)] |= std::uint64_t{1} << e.u;
    }
    all_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }

  SeparatorDecomposition run() {
    start_ = std::chrono::steady_clock::now();
    for (int k = 0; k <= n_ - 2; ++k) {
      best_balance_ = 0;
      std::vector<int> combo(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) combo[static_cast<std::size_t>(i)] = i;
      for (;;) {
        check_time();
        std::uint64_t s_mask = 0;
        for (int v : combo) s_mask |= std::uint64_t{1} << v;
        evaluate(s_mask);
        if (!next_combination(combo)) break;
      }
      if (best_balance_ > 0) return build(best_s_);
    }
    throw InfeasibleError("no balanced vertex separator exists");
  }

 private:
  bool next_combination(std::vector<int>& combo) const {
    int k = static_cast<int>(combo.size());
    int i = k - 1;
    while (i >= 0 && combo[static_cast<std::size_t>(i)] == n_ - k + i) --i;
    if (i < 0) return false;
    ++combo[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
    return true;
  }

  void check_time() {
    if (!time_limit_ || (++steps_ & 0x3ff) != 0) return;
    if (std::chrono::steady_clock::now() - start_ > *time_limit_)
      throw TimeoutError("separator search exceeded its time limit");
  }

  // Components of G - S, ordered by smallest vertex.
  std::vector<std::uint64_t> components(std::uint64_t s_mask) const {
    std::vector<std::uint64_t> comps;
    std::uint64_t remaining = all_ & ~s_mask;
    while (remaining) {
      std::uint64_t comp = remaining & (~remaining + 1);
      std::uint64_t frontier = comp;
      while (frontier) {
        int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        std::uint64_t fresh = adj_[static_cast<std::size_t>(v)] & remaining & ~comp;
        comp |= fresh;
        frontier |= fresh;
      }
      comps.push_back(comp);
      remaining &= ~comp;
    }
    return comps;
  }

  // reach[i] has bit t set when components i.. can sum to t.
  static std::vector<std::uint64_t> suffix_sums(const std::vector<int>& sizes) {
    std::vector<std::uint64_t> reach(sizes.size() + 1, 0);
    reach[sizes.size()] = 1;
    for (std::size_t i = sizes.size(); i-- > 0;)
      reach[i] = reach[i + 1] | (reach[i + 1] << sizes[i]);
    return reach;
  }

  // Sizes of A (component 0 forced into A) that give a valid split with
  // min(|A|,|B|) == balance.
  std::uint64_t targets(int total, int balance) const {
    std::uint64_t t = 0;
    for (int a = 1; a < total; ++a)
      if (a <= bound_ && total - a <= bound_ && std::min(a, total - a) == balance)
        t |= std::uint64_t{1} << a;
    return t;
  }

  void evaluate(std::uint64_t s_mask) {
    auto comps = components(s_mask);
    if (comps.size() < 2) return;
    std::vector<int> sizes;
    for (auto c : comps) sizes.push_back(std::popcount(c));
    int total = n_ - std::popcount(s_mask);
    auto reach = suffix_sums(sizes);
    std::uint64_t a_sums = reach[1] << sizes[0];
    int balance = 0;
    for (int a = 1; a < total; ++a)
      if (((a_sums >> a) & 1U) && a <= bound_ && total - a <= bound_)
        balance = std::max(balance, std::min(a, total - a));
    if (balance > best_balance_) {
      best_balance_ = balance;
      best_s_ = s_mask;
    }
  }

  // Greedy walk over components: each goes to A whenever a target size is
  // still reachable, which fixes a unique split among the optimal ones.
  SeparatorDecomposition build(std::uint64_t s_mask) const {
    auto comps = components(s_mask);
    std::vector<int> sizes;
    for (auto c : comps) sizes.push_back(std::popcount(c));
    int total = n_ - std::popcount(s_mask);
    auto reach = suffix_sums(sizes);
    std::uint64_t goal = targets(total, best_balance_);
    std::uint64_t a_mask = comps[0];
    int a_size = sizes[0];
    for (std::size_t i = 1; i < comps.size(); ++i) {
      int with = a_size + sizes[i];
      if ((reach[i + 1] << with) & goal) {
        a_mask |= comps[i];
        a_size = with;
      }
    }
    SeparatorDecomposition dec;
    dec.a = mask_to_list(a_mask);
    dec.b = mask_to_list(all_ & ~s_mask & ~a_mask);
    dec.s = mask_to_list(s_mask);
    dec.balance_bound = bound_;
    return dec;
  }

  int n_;
  int bound_;
  std::optional<std::chrono::milliseconds> time_limit_;
  std::vector<std::uint64_t> adj_;
  std::uint64_t all_ = 0;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t steps_ = 0;
  int best_balance_ = 0;
  std::uint64_t best_s_ = 0;
};

}  // namespace detail

/// Minimum-cardinality vertex separator with max(|A|, |B|) <=
/// ceil(balance_fraction * n). Ties prefer the more balanced split, then the
/// lexicographically smallest S. The component holding the lowest non-separator
/// vertex always lands in A.
///
/// Throws InfeasibleError when no such separator exists (complete graphs, for
/// example) and TimeoutError when the time limit runs out first.
inline SeparatorDecomposition find_separator(
    const MaxCutInstance& inst, double balance_fraction = kDefaultBalanceFraction,
    std::optional<std::chrono::milliseconds> time_limit = std::nullopt) {
  int n = inst.num_vertices();
  if (n < 3) throw ValidationError("separator search needs at least 3 vertices");
  if (n > 63) throw ValidationError("separator search supports at most 63 vertices");
  if (!(balance_fraction >= 0.5 && balance_fraction < 1.0))
    throw ValidationError("balance fraction must lie in [0.5, 1)");
  return detail::SeparatorSearch(inst, balance_bound_for(balance_fraction, n), time_limit).run();
}

inline nlohmann::json to_json(const SeparatorDecomposition& dec) {
  return {{"A", dec.a}, {"B", dec.b}, {"S", dec.s}, {"balance_bound", dec.balance_bound}};
}

inline SeparatorDecomposition decomposition_from_json(const nlohmann::json& j) {
  SeparatorDecomposition dec;
  try {
    dec.a = j.at("A").get<std::vector<int>>();
    dec.b = j.at("B").get<std::vector<int>>();
    dec.s = j.at("S").get<std::vector<int>>();
    dec.balance_bound = j.contains("balance_bound")
                            ? j.at("balance_bound").get<int>()
                            : static_cast<int>(dec.a.size() + dec.b.size() + dec.s.size());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad decomposition JSON: ") + e.what());
  }
  return dec;
}

}  // namespace qcut

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

// Brute-force reference implementations used to check the library.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "qcut/graph.hpp"
#include "qcut/rational.hpp"

namespace qcut::oracle {

/// Objective recomputed from the edge list, no shared code with cut_value.
inline Rational objective(const MaxCutInstance& inst, std::uint64_t x) {
  Rational c = inst.offset();
  for (const auto& e : inst.edges())
    if (((x >> e.u) & 1U) != ((x >> e.v) & 1U)) c += e.w;
  for (int v = 0; v < inst.num_vertices(); ++v)
    if ((x >> v) & 1U) c += inst.linear(v);
  return c;
}

inline Rational brute_max(const MaxCutInstance& inst) {
  Rational best = objective(inst, 0);
  for (std::uint64_t x = 1; x < (std::uint64_t{1} << inst.num_vertices()); ++x)
    best = std::max(best, objective(inst, x));
  return best;
}

/// Smallest |S| over all labelings of the vertices with A, B, S such that A
/// and B are nonempty, no edge joins them and both fit the bound.
inline int brute_min_separator(const MaxCutInstance& inst, int bound) {
  int n = inst.num_vertices();
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  int best = std::numeric_limits<int>::max();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    int na = 0, nb = 0, ns = 0;
    for (int i = 0; i < n; ++i) {
      label[static_cast<std::size_t>(i)] = static_cast<int>(c % 3);
      c /= 3;
      int l = label[static_cast<std::size_t>(i)];
      na += l == 0;
      nb += l == 1;
      ns += l == 2;
    }
    if (na == 0 || nb == 0 || na > bound || nb > bound || ns >= best) continue;
    bool ok = true;
    for (const auto& e : inst.edges()) {
      int lu = label[static_cast<std::size_t>(e.u)];
      int lv = label[static_cast<std::size_t>(e.v)];
      if (lu + lv == 1 && lu != lv) ok = false;
    }
    if (ok) best = ns;
  }
  return best;
}

/// Erdos-Renyi style graph with unit weights.
inline MaxCutInstance random_graph(int n, double density, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution coin(density);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(gen)) edges.push_back({u, v, Rational(1)});
  return MaxCutInstance(n, edges);
}

/// Random signed rational weights in {-3..3}/2, optionally with linear terms.
inline MaxCutInstance random_weighted(int n, double density, std::uint64_t seed, bool linear = false) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution coin(density);
  std::uniform_int_distribution<int> w(-3, 3);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(gen)) {
        int k = w(gen);
        if (k != 0) edges.push_back({u, v, Rational(k, 2)});
      }
  std::vector<Rational> h;
  if (linear)
    for (int v = 0; v < n; ++v) h.push_back(Rational(w(gen), 2));
  return MaxCutInstance(n, edges, h, Rational(w(gen)));
}

// Minimal dense linear algebra for circuit oracles: states are plain vectors
// indexed with qubit 0 as the least significant bit.
using Cx = std::complex<double>;
using Mat2 = std::array<std::array<Cx, 2>, 2>;

inline std::vector<Cx> apply_1q(const std::vector<Cx>& psi, int q, const Mat2& m) {
  std::vector<Cx> out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    int b = static_cast<int>((i >> q) & 1U);
    std::size_t i0 = i & ~(std::size_t{1} << q);
    std::size_t i1 = i0 | (std::size_t{1} << q);
    out[i] = m[static_cast<std::size_t>(b)][0] * psi[i0] + m[static_cast<std::size_t>(b)][1] * psi[i1];
  }
  return out;
}

inline Mat2 rx_matrix(double theta) {
  Cx c(std::cos(theta / 2), 0), s(0, -std::sin(theta / 2));
  return {{{c, s}, {s, c}}};
}

/// Gate-by-gate QAOA state with explicit per-edge phases and matrices.
inline std::vector<Cx> qaoa_state(const MaxCutInstance& inst, const std::vector<double>& gammas,
                                  const std::vector<double>& betas) {
  int n = inst.num_vertices();
  std::size_t dim = std::size_t{1} << n;
  std::vector<Cx> psi(dim, Cx(1.0 / std::sqrt(static_cast<double>(dim)), 0));
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    for (std::size_t x = 0; x < dim; ++x) {
      double phase = 0;
      for (const auto& e : inst.edges())
        if (((x >> e.u) & 1U) != ((x >> e.v) & 1U)) phase += to_double(e.w);
      for (int v = 0; v < n; ++v)
        if ((x >> v) & 1U) phase += to_double(inst.linear(v));
      psi[x] *= std::exp(Cx(0, -gammas[k] * phase));
    }
    for (int q = 0; q < n; ++q) psi = apply_1q(psi, q, rx_matrix(2 * betas[k]));
  }
  return psi;
}

inline std::vector<double> probabilities(const std::vector<Cx>& psi) {
  std::vector<double> p(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) p[i] = std::norm(psi[i]);
  return p;
}

}  // namespace qcut::oracle

namespace qcut::oracle {

/// Random graph whose vertex `s` separates two random connected-ish sides;
/// returns the instance with A, B and S listed in a SeparatorDecomposition
/// compatible layout (a, b, s).
struct CutInstance {
  MaxCutInstance instance;
  std::vector<int> a;
  std::vector<int> b;
  int s = 0;
};

inline CutInstance random_cut_instance(int na, int nb, std::uint64_t seed, bool linear = true) {
  std::mt19937_64 gen(seed);
  int n = na + nb + 1;
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), gen);
  CutInstance out;
  out.a.assign(perm.begin(), perm.begin() + na);
  out.b.assign(perm.begin() + na, perm.begin() + na + nb);
  out.s = perm.back();
  std::uniform_int_distribution<int> w(-4, 4);
  auto weight = [&] {
    int k = 0;
    while (k == 0) k = w(gen);
    return Rational(k, 2);
  };
  std::bernoulli_distribution coin(0.5);
  std::vector<Edge> edges;
  for (const auto* side : {&out.a, &out.b}) {
    for (std::size_t i = 1; i < side->size(); ++i)
      edges.push_back({(*side)[i - 1], (*side)[i], weight()});
    for (std::size_t i = 0; i < side->size(); ++i)
      for (std::size_t j = i + 2; j < side->size(); ++j)
        if (coin(gen)) edges.push_back({(*side)[i], (*side)[j], weight()});
    edges.push_back({out.s, side->front(), weight()});
    for (std::size_t i = 1; i < side->size(); ++i)
      if (coin(gen)) edges.push_back({out.s, (*side)[i], weight()});
  }
  std::vector<Rational> h(static_cast<std::size_t>(n), Rational(0));
  if (linear)
    for (auto& x : h)
      if (coin(gen)) x = Rational(w(gen), 4);
  std::sort(out.a.begin(), out.a.end());
  std::sort(out.b.begin(), out.b.end());
  out.instance = MaxCutInstance(n, edges, h, Rational(w(gen)));
  return out;
}

}  // namespace qcut::oracle

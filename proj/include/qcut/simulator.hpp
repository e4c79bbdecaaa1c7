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
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "qcut/circuit.hpp"
#include "qcut/errors.hpp"
#include "qcut/graph.hpp"
#include "qcut/rng.hpp"
#include "qcut/statevector.hpp"

namespace qcut {

/// Stochastic Pauli noise: after every one-qubit (two-qubit) gate a uniformly
/// random non-identity Pauli hits the touched qubit(s) with probability p1
/// (p2); every reported bit flips with probability p_ro.
struct NoiseModel {
  double p1 = 0.002;
  double p2 = 0.015;
  double p_ro = 0.02;

  void validate() const {
    for (double p : {p1, p2, p_ro})
      if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("noise probabilities must lie in [0, 1]");
  }

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

/// Outcome of every tagged measurement: one bit, or a bitmask for MeasureAll.
struct ShotResult {
  std::map<std::string, std::uint64_t> outcomes;
};

/// Objective of every basis state, offset included. Index bit k is vertex k.
inline std::vector<double> cost_table(const MaxCutInstance& inst) {
  int n = inst.num_vertices();
  if (n > kMaxQubits) throw ValidationError("instance too large for a dense cost table");
  std::vector<double> cost(std::size_t{1} << n, to_double(inst.offset()));
  for (const Edge& e : inst.edges()) {
    double w = to_double(e.w);
    for (std::size_t x = 0; x < cost.size(); ++x)
      if (((x >> e.u) ^ (x >> e.v)) & 1U) cost[x] += w;
  }
  for (int v = 0; v < n; ++v) {
    double h = to_double(inst.linear(v));
    if (h == 0.0) continue;
    for (std::size_t x = 0; x < cost.size(); ++x)
      if ((x >> v) & 1U) cost[x] += h;
  }
  return cost;
}

/// Index drawn from a cumulative distribution; `u` uniform in [0, 1).
inline std::uint64_t sample_index(const std::vector<double>& cdf, double u) {
  double target = u * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  if (it == cdf.end()) --it;
  return static_cast<std::uint64_t>(it - cdf.begin());
}

inline std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) cdf[i] = acc += p[i];
  return cdf;
}

namespace detail {

inline void apply_gate(Statevector& sv, const Operation& o) {
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, op::H>) sv.apply_h(g.q);
        else if constexpr (std::is_same_v<T, op::RX>) sv.apply_rx(g.q, g.theta);
        else if constexpr (std::is_same_v<T, op::RZ>) sv.apply_rz(g.q, g.theta);
        else if constexpr (std::is_same_v<T, op::ZZPhase>) sv.apply_zz_phase(g.q1, g.q2, g.phi);
        else if constexpr (std::is_same_v<T, op::ResetTo>) sv.reset_to(g.q, g.state);
      },
      o);
}

inline void inject_noise(Statevector& sv, const Operation& o, const NoiseModel& noise, Rng& rng) {
  if (const auto* zz = std::get_if<op::ZZPhase>(&o)) {
    if (!rng.bernoulli(noise.p2)) return;
    auto k = 1 + rng.below(15);  // one of the 15 non-identity two-qubit Paulis
    sv.apply_pauli(zz->q1, static_cast<Pauli>(k % 4));
    sv.apply_pauli(zz->q2, static_cast<Pauli>(k / 4));
    return;
  }
  if (!is_single_qubit_gate(o) || !rng.bernoulli(noise.p1)) return;
  int q = std::visit(
      [](const auto& g) -> int {
        if constexpr (requires { g.q; }) return g.q;
        else return -1;
      },
      o);
  sv.apply_pauli(q, static_cast<Pauli>(1 + rng.below(3)));
}

inline std::uint64_t readout(std::uint64_t bits, int width, const std::optional<NoiseModel>& noise,
                             Rng& rng) {
  if (!noise) return bits;
  for (int k = 0; k < width; ++k)
    if (rng.bernoulli(noise->p_ro)) bits ^= std::uint64_t{1} << k;
  return bits;
}

// Runs ops [0, end) of a circuit on one trajectory.
inline void run_prefix(const Circuit& c, std::size_t end, Statevector& sv,
                       const std::optional<NoiseModel>& noise, Rng& rng, ShotResult& result) {
  for (std::size_t i = 0; i < end; ++i) {
    const Operation& o = c.ops()[i];
    if (const auto* m = std::get_if<op::MeasureZ>(&o)) {
      int bit = sv.measure(m->q, Basis::kZ, rng.uniform());
      result.outcomes[m->tag] = readout(static_cast<std::uint64_t>(bit), 1, noise, rng);
    } else if (const auto* mb = std::get_if<op::MeasureBasis>(&o)) {
      int bit = sv.measure(mb->q, mb->basis, rng.uniform());
      result.outcomes[mb->tag] = readout(static_cast<std::uint64_t>(bit), 1, noise, rng);
    } else if (const auto* ma = std::get_if<op::MeasureAll>(&o)) {
      auto cdf = cumulative(sv.probabilities());
      std::uint64_t x = sample_index(cdf, rng.uniform());
      sv.amplitudes().assign(sv.dim(), Amplitude(0.0, 0.0));
      sv.amplitudes()[x] = 1.0;
      result.outcomes[ma->tag] = readout(x, c.num_qubits(), noise, rng);
    } else {
      apply_gate(sv, o);
      if (noise) inject_noise(sv, o, *noise, rng);
    }
  }
}

}  // namespace detail

/// One shot of the circuit from |0...0>. Deterministic given the engine state.
inline ShotResult run_shot(const Circuit& c, const std::optional<NoiseModel>& noise, Rng& rng) {
  c.validate();
  if (noise) noise->validate();
  Statevector sv(c.num_qubits());
  ShotResult result;
  detail::run_prefix(c, c.size(), sv, noise, rng, result);
  return result;
}

/// Runs one (noisy) trajectory up to the circuit's final MeasureAll and
/// draws `count` bitstrings from it, each with independent readout flips.
/// Gate noise is shared by the samples of one trajectory.
inline std::vector<std::uint64_t> sample_trajectory(const Circuit& c,
                                                    const std::optional<NoiseModel>& noise,
                                                    Rng& rng, std::size_t count) {
  c.validate();
  if (noise) noise->validate();
  if (c.ops().empty() || !std::holds_alternative<op::MeasureAll>(c.ops().back()))
    throw ValidationError("trajectory sampling needs a circuit ending in MeasureAll");
  Statevector sv(c.num_qubits());
  ShotResult mid;
  detail::run_prefix(c, c.size() - 1, sv, noise, rng, mid);
  auto cdf = cumulative(sv.probabilities());
  std::vector<std::uint64_t> out(count);
  for (auto& x : out) x = detail::readout(sample_index(cdf, rng.uniform()), c.num_qubits(), noise, rng);
  return out;
}

/// One branch of the mid-circuit measurement tree.
struct ExactBranch {
  std::map<std::string, int> outcomes;
  double probability = 0.0;
  /// Distribution of the final MeasureAll conditioned on this branch.
  std::vector<double> distribution;
};

inline constexpr int kMaxExactBranchPoints = 2;

namespace detail {

inline void enumerate_branches(const Circuit& c, std::size_t start, Statevector sv, ExactBranch branch,
                               std::vector<ExactBranch>& out) {
  for (std::size_t i = start; i < c.size(); ++i) {
    const Operation& o = c.ops()[i];
    int q = -1;
    Basis b = Basis::kZ;
    std::string tag;
    if (const auto* m = std::get_if<op::MeasureZ>(&o)) {
      q = m->q;
      tag = m->tag;
    } else if (const auto* mb = std::get_if<op::MeasureBasis>(&o)) {
      q = mb->q;
      b = mb->basis;
      tag = mb->tag;
    }
    if (q >= 0) {
      for (int bit = 0; bit < 2; ++bit) {
        double p = sv.outcome_probability(q, b, bit);
        if (p <= 1e-15) continue;
        Statevector next = sv;
        next.project(q, b, bit);
        ExactBranch child = branch;
        child.outcomes[tag] = bit;
        child.probability *= p;
        enumerate_branches(c, i + 1, std::move(next), std::move(child), out);
      }
      return;
    }
    if (std::holds_alternative<op::MeasureAll>(o)) {
      branch.distribution = sv.probabilities();
      out.push_back(std::move(branch));
      return;
    }
    apply_gate(sv, o);
  }
}

}  // namespace detail

/// Exact enumeration of a noiseless circuit with at most two mid-circuit
/// measurements, ending in MeasureAll.
inline std::vector<ExactBranch> exact_branches(const Circuit& c) {
  c.validate();
  if (c.ops().empty() || !std::holds_alternative<op::MeasureAll>(c.ops().back()))
    throw ValidationError("exact evaluation needs a circuit ending in MeasureAll");
  int mids = 0;
  for (const auto& o : c.ops()) {
    if (std::holds_alternative<op::MeasureAll>(o) && &o != &c.ops().back())
      throw ValidationError("MeasureAll must be the final operation");
    if (std::holds_alternative<op::MeasureZ>(o) || std::holds_alternative<op::MeasureBasis>(o)) ++mids;
  }
  if (mids > kMaxExactBranchPoints)
    throw ValidationError("exact evaluation supports at most " +
                          std::to_string(kMaxExactBranchPoints) + " mid-circuit measurements");
  std::vector<ExactBranch> out;
  ExactBranch root;
  root.probability = 1.0;
  detail::enumerate_branches(c, 0, Statevector(c.num_qubits()), root, out);
  return out;
}

/// Final-measurement distribution, conditioned on the given mid-circuit
/// outcomes and marginalized over the rest. Index = bitstring.
inline std::vector<double> exact_distribution(const Circuit& c,
                                              const std::map<std::string, int>& conditioning = {}) {
  auto branches = exact_branches(c);
  std::vector<double> dist(std::size_t{1} << c.num_qubits(), 0.0);
  double mass = 0.0;
  for (const auto& br : branches) {
    bool match = true;
    for (const auto& [tag, bit] : conditioning) {
      auto it = br.outcomes.find(tag);
      if (it == br.outcomes.end() || it->second != bit) match = false;
    }
    if (!match) continue;
    mass += br.probability;
    for (std::size_t x = 0; x < dist.size(); ++x) dist[x] += br.probability * br.distribution[x];
  }
  if (mass <= 0.0) throw ValidationError("conditioning event has zero probability");
  for (auto& p : dist) p /= mass;
  return dist;
}

/// Sum_x p(x) objective(x) for a noiseless circuit over the instance's
/// vertices, computed from the state vector without sampling.
inline double expectation_of_objective(const Circuit& c, const MaxCutInstance& inst) {
  if (c.num_qubits() != inst.num_vertices())
    throw ValidationError("circuit has " + std::to_string(c.num_qubits()) + " qubits but instance has " +
                          std::to_string(inst.num_vertices()) + " vertices");
  auto dist = exact_distribution(c);
  auto cost = cost_table(inst);
  double e = 0.0;
  for (std::size_t x = 0; x < dist.size(); ++x) e += dist[x] * cost[x];
  return e;
}

}  // namespace qcut

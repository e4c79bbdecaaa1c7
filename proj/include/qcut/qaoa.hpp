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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcut/circuit.hpp"
#include "qcut/errors.hpp"
#include "qcut/graph.hpp"
#include "qcut/nelder_mead.hpp"
#include "qcut/simulator.hpp"
#include "qcut/statevector.hpp"

namespace qcut {

/// Angles of a p-layer QAOA circuit: cost angles gammas, mixer angles betas.
struct QaoaParams {
  int p = 1;
  std::vector<double> gammas;
  std::vector<double> betas;

  void validate() const {
    if (p < 1) throw ValidationError("QAOA needs at least one layer");
    if (gammas.size() != static_cast<std::size_t>(p) || betas.size() != static_cast<std::size_t>(p))
      throw ValidationError("QAOA angle lists must have length p");
  }

  std::vector<double> flatten() const {
    std::vector<double> x = gammas;
    x.insert(x.end(), betas.begin(), betas.end());
    return x;
  }

  static QaoaParams unflatten(const std::vector<double>& x) {
    QaoaParams out;
    out.p = static_cast<int>(x.size() / 2);
    out.gammas.assign(x.begin(), x.begin() + out.p);
    out.betas.assign(x.begin() + out.p, x.end());
    return out;
  }

  friend bool operator==(const QaoaParams&, const QaoaParams&) = default;
};

inline constexpr double kDefaultScheduleStep = 0.75;

/// Trotterized linear annealing ramp: for k = 1..p with s_k = (k - 1/2) / p,
/// gamma_k = s_k dt and beta_k = (1 - s_k) dt.
inline QaoaParams init_schedule(int p, double dt = kDefaultScheduleStep) {
  if (p < 1) throw ValidationError("QAOA needs at least one layer");
  if (!(dt > 0.0)) throw ValidationError("schedule step dt must be positive");
  QaoaParams out;
  out.p = p;
  for (int k = 1; k <= p; ++k) {
    double s = (k - 0.5) / p;
    out.gammas.push_back(s * dt);
    out.betas.push_back((1.0 - s) * dt);
  }
  return out;
}

/// H on every qubit, then per layer: ZZPhase(u, v, gamma w) per edge,
/// RZ(v, gamma h_v) per nonzero linear term and RX(q, 2 beta) per qubit;
/// finally MeasureAll("x"). `edge_order` permutes edge indices; the cost
/// gates commute, so it never changes the output distribution.
inline Circuit build_qaoa(const MaxCutInstance& inst, const QaoaParams& params,
                          const std::optional<std::vector<std::size_t>>& edge_order = std::nullopt) {
  params.validate();
  int n = inst.num_vertices();
  if (n > kMaxQubits) throw ValidationError("instance exceeds the simulator qubit limit");
  std::vector<std::size_t> order(inst.num_edges());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (edge_order) {
    auto sorted = *edge_order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != order) throw ValidationError("edge order is not a permutation of the edges");
    order = *edge_order;
  }
  Circuit c(n);
  for (int q = 0; q < n; ++q) c.h(q);
  for (int k = 0; k < params.p; ++k) {
    double gamma = params.gammas[static_cast<std::size_t>(k)];
    double beta = params.betas[static_cast<std::size_t>(k)];
    for (auto i : order) {
      const Edge& e = inst.edges()[i];
      c.zz_phase(e.u, e.v, gamma * to_double(e.w));
    }
    for (int v = 0; v < n; ++v)
      if (inst.linear(v) != Rational(0)) c.rz(v, gamma * to_double(inst.linear(v)));
    for (int q = 0; q < n; ++q) c.rx(q, 2.0 * beta);
  }
  c.measure_all("x");
  return c;
}

/// Noiseless QAOA state preparation with the whole cost layer applied as one
/// diagonal phase; equivalent to simulating build_qaoa gate by gate.
class QaoaEvaluator {
 public:
  explicit QaoaEvaluator(const MaxCutInstance& inst)
      : n_(inst.num_vertices()), cost_(cost_table(inst)) {}

  int num_qubits() const { return n_; }
  const std::vector<double>& cost() const { return cost_; }

  Statevector evolve(const QaoaParams& params) const {
    params.validate();
    Statevector sv(n_);
    const double amp = 1.0 / std::sqrt(static_cast<double>(sv.dim()));
    std::fill(sv.amplitudes().begin(), sv.amplitudes().end(), Amplitude(amp, 0.0));
    for (int k = 0; k < params.p; ++k) {
      sv.apply_diagonal_phase(cost_, params.gammas[static_cast<std::size_t>(k)]);
      for (int q = 0; q < n_; ++q) sv.apply_rx(q, 2.0 * params.betas[static_cast<std::size_t>(k)]);
    }
    return sv;
  }

  std::vector<double> distribution(const QaoaParams& params) const {
    return evolve(params).probabilities();
  }

  double expectation(const QaoaParams& params) const {
    auto sv = evolve(params);
    double e = 0.0;
    for (std::size_t x = 0; x < sv.dim(); ++x) e += std::norm(sv.amplitudes()[x]) * cost_[x];
    return e;
  }

 private:
  int n_;
  std::vector<double> cost_;
};

struct TrainResult {
  QaoaParams params;
  double initial_expectation = 0.0;
  double final_expectation = 0.0;
  int evaluations = 0;
};

/// Start from the annealing schedule and refine with a simplex search that
/// maximizes the exact objective expectation. Never returns parameters worse
/// than the initialization; a zero evaluation budget returns it unchanged.
inline TrainResult train(const MaxCutInstance& inst, int p, double dt = kDefaultScheduleStep,
                         const NelderMeadOptions& optimizer = {}) {
  QaoaEvaluator evaluator(inst);
  TrainResult out;
  out.params = init_schedule(p, dt);
  out.initial_expectation = evaluator.expectation(out.params);
  out.final_expectation = out.initial_expectation;
  if (optimizer.max_evaluations <= 0) return out;
  auto objective = [&](const std::vector<double>& x) {
    return -evaluator.expectation(QaoaParams::unflatten(x));
  };
  auto nm = nelder_mead(objective, out.params.flatten(), optimizer);
  out.evaluations = nm.evaluations;
  if (-nm.value > out.initial_expectation) {
    out.params = QaoaParams::unflatten(nm.x);
    out.final_expectation = -nm.value;
  }
  return out;
}

inline nlohmann::json to_json(const QaoaParams& params) {
  return {{"p", params.p}, {"gammas", params.gammas}, {"betas", params.betas}};
}

inline QaoaParams params_from_json(const nlohmann::json& j) {
  QaoaParams out;
  try {
    out.p = j.at("p").get<int>();
    out.gammas = j.at("gammas").get<std::vector<double>>();
    out.betas = j.at("betas").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad QAOA parameter JSON: ") + e.what());
  }
  out.validate();
  return out;
}

}  // namespace qcut

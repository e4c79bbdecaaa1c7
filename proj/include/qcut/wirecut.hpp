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

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcut/circuit.hpp"
#include "qcut/errors.hpp"
#include "qcut/graph.hpp"
#include "qcut/qaoa.hpp"
#include "qcut/rng.hpp"
#include "qcut/separator.hpp"
#include "qcut/simulator.hpp"

namespace qcut {

// ---------------------------------------------------------------------------
// Quasi-probability decompositions of the single-qubit identity channel
// ---------------------------------------------------------------------------

enum class CutScheme { kPeng, kHarada };

/// How the downstream fragment prepares the cut qubit.
enum class PrepRule {
  kFixed,             // a fixed state, independent of the measurement
  kSameEigenstate,    // the eigenstate that was measured
  kFlippedEigenstate  // the orthogonal eigenstate
};

struct QpdTerm {
  CutScheme scheme = CutScheme::kPeng;
  Basis measure_basis = Basis::kZ;
  PrepRule rule = PrepRule::kFixed;
  /// Used when rule == kFixed.
  PrepState prep = PrepState::kZ0;
  Rational coefficient;
  /// Multiply the shot sign by (-1)^(measured bit).
  bool outcome_sign = false;

  int sign() const { return coefficient < 0 ? -1 : 1; }
  double weight() const { return to_double(boost::abs(coefficient)); }
};

/// rho = 1/2 [Tr(rho) I + sum_O Tr(O rho) O]: two trace terms that measure Z,
/// drop the outcome and prepare |0> or |1>, then for O in {X, Y, Z} a pair
/// preparing the +1 / -1 eigenstates with coefficients +1/2 and -1/2.
inline std::vector<QpdTerm> peng_terms() {
  const Rational half(1, 2);
  std::vector<QpdTerm> t;
  t.push_back({CutScheme::kPeng, Basis::kZ, PrepRule::kFixed, PrepState::kZ0, half, false});
  t.push_back({CutScheme::kPeng, Basis::kZ, PrepRule::kFixed, PrepState::kZ1, half, false});
  for (Basis b : {Basis::kX, Basis::kY, Basis::kZ}) {
    t.push_back({CutScheme::kPeng, b, PrepRule::kFixed, eigenstate(b, 0), half, true});
    t.push_back({CutScheme::kPeng, b, PrepRule::kFixed, eigenstate(b, 1), -half, true});
  }
  return t;
}

/// Measure-and-prepare decomposition over the three Pauli bases with 1-norm 3:
/// per basis, re-prepare the measured eigenstate with +2/3 and the orthogonal
/// one with -1/3. Needs only the measured bit downstream.
inline std::vector<QpdTerm> harada_terms() {
  std::vector<QpdTerm> t;
  for (Basis b : {Basis::kX, Basis::kY, Basis::kZ}) {
    t.push_back({CutScheme::kHarada, b, PrepRule::kSameEigenstate, PrepState::kZ0, Rational(2, 3), false});
    t.push_back({CutScheme::kHarada, b, PrepRule::kFlippedEigenstate, PrepState::kZ0, Rational(-1, 3), false});
  }
  return t;
}

inline Rational one_norm(const std::vector<QpdTerm>& terms) {
  Rational s = 0;
  for (const auto& t : terms) s += boost::abs(t.coefficient);
  return s;
}

/// State fragment B starts from, given the Harada term and its outcome.
inline PrepState harada_preparation(const QpdTerm& term, int measured) {
  int bit = term.rule == PrepRule::kFlippedEigenstate ? 1 - measured : measured;
  return eigenstate(term.measure_basis, bit);
}

/// Overhead of one Harada cut followed by one Peng cut.
inline constexpr int kCutKappa = 12;

// ---------------------------------------------------------------------------
// Cut plan
// ---------------------------------------------------------------------------

inline int basis_index(Basis b) { return static_cast<int>(b); }
inline int prep_index(PrepState s) { return static_cast<int>(s); }
inline constexpr std::array<PrepState, 6> kAllPrepStates = {
    PrepState::kZ0, PrepState::kZ1, PrepState::kXPlus, PrepState::kXMinus, PrepState::kYPlus, PrepState::kYMinus};
inline constexpr std::array<Basis, 3> kAllBases = {Basis::kX, Basis::kY, Basis::kZ};

/// Two fragments of the p = 2 QAOA circuit of a shrunk instance whose
/// separator is the single vertex s.
///
/// The wire of s is split into three segments. Segment 1 (H, layer-1 cost
/// gates towards A) and segment 3 (layer-2 cost gates towards A, final mixer)
/// run in fragment A, which reuses the qubit through a measurement and a
/// reset. Segment 2 (layer-1 cost gates towards B, first mixer, layer-2 cost
/// gates towards B) runs in fragment B. The 1 -> 2 boundary is cut with the
/// Harada decomposition, the 2 -> 3 boundary with the Peng decomposition, so
/// fragment B only needs the first measurement outcome of fragment A.
///
/// Fragment A qubits: A vertices in ascending order, then s.
/// Fragment B qubits: B vertices in ascending order, then s.
struct CutPlan {
  MaxCutInstance instance;
  QaoaParams params;
  int s = 0;
  std::vector<int> a_vertices;
  std::vector<int> b_vertices;
  int kappa = kCutKappa;

  /// fragment_a[harada basis][peng preparation]; tags "m1" and "a".
  std::array<std::array<Circuit, 6>, 3> fragment_a;
  /// fragment_b[preparation][peng basis]; tags "m2" and "b".
  std::array<std::array<Circuit, 3>, 6> fragment_b;

  int num_a_qubits() const { return static_cast<int>(a_vertices.size()) + 1; }
  int num_b_qubits() const { return static_cast<int>(b_vertices.size()) + 1; }

  const Circuit& fragment_a_for(Basis harada_basis, PrepState peng_prep) const {
    return fragment_a[static_cast<std::size_t>(basis_index(harada_basis))]
                     [static_cast<std::size_t>(prep_index(peng_prep))];
  }
  const Circuit& fragment_b_for(PrepState prep, Basis peng_basis) const {
    return fragment_b[static_cast<std::size_t>(prep_index(prep))]
                     [static_cast<std::size_t>(basis_index(peng_basis))];
  }

  /// Shrunk-order bitstring from fragment-A bits (A vertices then s) and
  /// fragment-B bits (B vertices; the copy of s is ignored).
  std::uint64_t assemble(std::uint64_t a_bits, std::uint64_t b_bits) const {
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < a_vertices.size(); ++i)
      if ((a_bits >> i) & 1U) x |= std::uint64_t{1} << a_vertices[i];
    if ((a_bits >> a_vertices.size()) & 1U) x |= std::uint64_t{1} << s;
    for (std::size_t i = 0; i < b_vertices.size(); ++i)
      if ((b_bits >> i) & 1U) x |= std::uint64_t{1} << b_vertices[i];
    return x;
  }

  std::string digest() const {
    std::ostringstream text;
    text << write_instance(instance) << "s=" << s << '\n' << to_json(params).dump();
    return fnv1a_hex(text.str());
  }
};

namespace detail {

struct CutEdges {
  std::vector<Edge> inner;      // both endpoints on the fragment side
  std::vector<Edge> to_cut;     // (local neighbour, local s)
};

inline CutEdges side_edges(const MaxCutInstance& inst, int s, const std::vector<int>& local) {
  CutEdges out;
  int s_local = static_cast<int>(std::count_if(local.begin(), local.end(), [](int l) { return l >= 0; }));
  for (const Edge& e : inst.edges()) {
    int lu = local[static_cast<std::size_t>(e.u)];
    int lv = local[static_cast<std::size_t>(e.v)];
    if (lu >= 0 && lv >= 0) out.inner.push_back({lu, lv, e.w});
    else if (e.u == s && lv >= 0) out.to_cut.push_back({lv, s_local, e.w});
    else if (e.v == s && lu >= 0) out.to_cut.push_back({lu, s_local, e.w});
  }
  return out;
}

inline void cost_gates(Circuit& c, const std::vector<Edge>& edges, double gamma) {
  for (const Edge& e : edges) c.zz_phase(e.u, e.v, gamma * to_double(e.w));
}

inline void linear_gates(Circuit& c, const MaxCutInstance& inst, const std::vector<int>& vertices,
                         double gamma) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (inst.linear(vertices[i]) != Rational(0))
      c.rz(static_cast<int>(i), gamma * to_double(inst.linear(vertices[i])));
}

}  // namespace detail

/// Build both fragment families for a shrunk instance whose separator is a
/// single vertex adjacent to both sides.
inline CutPlan build_cut_plan(const MaxCutInstance& shrunk, const SeparatorDecomposition& dec,
                              const QaoaParams& params) {
  params.validate();
  if (dec.s.size() != 1) throw ValidationError("wire cutting needs a separator of exactly one vertex");
  if (params.p != 2) throw ValidationError("wire cutting is defined for p = 2 QAOA circuits");
  if (!verify_separator(shrunk, dec)) throw ValidationError("decomposition is not a valid separator");

  CutPlan plan;
  plan.instance = shrunk;
  plan.params = params;
  plan.s = dec.s.front();
  plan.a_vertices = dec.a;
  plan.b_vertices = dec.b;
  std::sort(plan.a_vertices.begin(), plan.a_vertices.end());
  std::sort(plan.b_vertices.begin(), plan.b_vertices.end());
  if (plan.num_a_qubits() > kMaxQubits || plan.num_b_qubits() > kMaxQubits)
    throw ValidationError("fragment exceeds the simulator qubit limit");

  auto n = static_cast<std::size_t>(shrunk.num_vertices());
  std::vector<int> a_local(n, -1);
  std::vector<int> b_local(n, -1);
  for (std::size_t i = 0; i < plan.a_vertices.size(); ++i)
    a_local[static_cast<std::size_t>(plan.a_vertices[i])] = static_cast<int>(i);
  for (std::size_t i = 0; i < plan.b_vertices.size(); ++i)
    b_local[static_cast<std::size_t>(plan.b_vertices[i])] = static_cast<int>(i);
  auto a_edges = detail::side_edges(shrunk, plan.s, a_local);
  auto b_edges = detail::side_edges(shrunk, plan.s, b_local);
  if (a_edges.to_cut.empty() || b_edges.to_cut.empty())
    throw ValidationError("separator vertex must be adjacent to both sides; degenerate cut");

  const double g1 = params.gammas[0], g2 = params.gammas[1];
  const double b1 = params.betas[0], b2 = params.betas[1];
  const double h_s = to_double(shrunk.linear(plan.s));
  const int sa = plan.num_a_qubits() - 1;
  const int sb = plan.num_b_qubits() - 1;

  for (Basis hb : kAllBases)
    for (PrepState prep : kAllPrepStates) {
      Circuit c(plan.num_a_qubits());
      for (int q = 0; q <= sa; ++q) c.h(q);
      detail::cost_gates(c, a_edges.inner, g1);
      detail::linear_gates(c, shrunk, plan.a_vertices, g1);
      detail::cost_gates(c, a_edges.to_cut, g1);
      if (h_s != 0.0) c.rz(sa, g1 * h_s);
      for (int q = 0; q < sa; ++q) c.rx(q, 2.0 * b1);
      c.measure(sa, hb, "m1");
      c.reset_to(sa, prep);
      detail::cost_gates(c, a_edges.inner, g2);
      detail::linear_gates(c, shrunk, plan.a_vertices, g2);
      detail::cost_gates(c, a_edges.to_cut, g2);
      if (h_s != 0.0) c.rz(sa, g2 * h_s);
      for (int q = 0; q <= sa; ++q) c.rx(q, 2.0 * b2);
      c.measure_all("a");
      plan.fragment_a[static_cast<std::size_t>(basis_index(hb))][static_cast<std::size_t>(prep_index(prep))] =
          std::move(c);
    }

  for (PrepState prep : kAllPrepStates)
    for (Basis pb : kAllBases) {
      Circuit c(plan.num_b_qubits());
      c.reset_to(sb, prep);
      for (int q = 0; q < sb; ++q) c.h(q);
      detail::cost_gates(c, b_edges.inner, g1);
      detail::linear_gates(c, shrunk, plan.b_vertices, g1);
      detail::cost_gates(c, b_edges.to_cut, g1);
      for (int q = 0; q <= sb; ++q) c.rx(q, 2.0 * b1);
      detail::cost_gates(c, b_edges.inner, g2);
      detail::linear_gates(c, shrunk, plan.b_vertices, g2);
      detail::cost_gates(c, b_edges.to_cut, g2);
      for (int q = 0; q < sb; ++q) c.rx(q, 2.0 * b2);
      c.measure(sb, pb, "m2");
      c.measure_all("b");
      plan.fragment_b[static_cast<std::size_t>(prep_index(prep))][static_cast<std::size_t>(basis_index(pb))] =
          std::move(c);
    }
  return plan;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

struct SignedSample {
  std::uint64_t bits = 0;
  int sign = 1;

  friend bool operator==(const SignedSample&, const SignedSample&) = default;
};

struct SignedSampleSet {
  int num_bits = 0;
  double kappa = kCutKappa;
  std::vector<SignedSample> samples;

  std::size_t size() const { return samples.size(); }
};

namespace detail {

// Index into a small table drawn proportionally to |coefficient|.
inline std::size_t draw_term(const std::vector<QpdTerm>& terms, double norm, Rng& rng) {
  double u = rng.uniform() * norm;
  double acc = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    acc += terms[i].weight();
    if (u < acc) return i;
  }
  return terms.size() - 1;
}

}  // namespace detail

struct CutShot {
  std::uint64_t bits = 0;
  int sign = 1;
  /// Indices into harada_terms() and peng_terms().
  std::size_t harada_term = 0;
  std::size_t peng_term = 0;
  int m1 = 0;
  int m2 = 0;
};

/// One shot of the sequential protocol: fragment A runs to completion first,
/// fragment B is then built from the Harada term and the bit m1 alone.
inline CutShot sample_cut_shot(const CutPlan& plan, const std::optional<NoiseModel>& noise, Rng& rng) {
  static const auto harada = harada_terms();
  static const auto peng = peng_terms();
  CutShot shot;
  shot.harada_term = detail::draw_term(harada, 3.0, rng);
  shot.peng_term = detail::draw_term(peng, 4.0, rng);
  const QpdTerm& h = harada[shot.harada_term];
  const QpdTerm& p = peng[shot.peng_term];

  ShotResult ra = run_shot(plan.fragment_a_for(h.measure_basis, p.prep), noise, rng);
  shot.m1 = static_cast<int>(ra.outcomes.at("m1"));

  const Circuit& frag_b = plan.fragment_b_for(harada_preparation(h, shot.m1), p.measure_basis);
  ShotResult rb = run_shot(frag_b, noise, rng);
  shot.m2 = static_cast<int>(rb.outcomes.at("m2"));

  shot.sign = h.sign() * p.sign() * ((p.outcome_sign && shot.m2) ? -1 : 1);
  shot.bits = plan.assemble(ra.outcomes.at("a"), rb.outcomes.at("b"));
  return shot;
}

/// Exact branch probabilities of every fragment circuit of a plan. Serves as
/// the deterministic oracle for the cut estimator and as a fast sampler for
/// noiseless runs (the same distribution as sample_cut_shot without noise).
class CutBranchTable {
 public:
  explicit CutBranchTable(const CutPlan& plan) : plan_(&plan) {
    for (Basis hb : kAllBases)
      for (PrepState prep : kAllPrepStates) {
        auto& cell = a_[static_cast<std::size_t>(basis_index(hb))][static_cast<std::size_t>(prep_index(prep))];
        for (const auto& br : exact_branches(plan.fragment_a_for(hb, prep))) {
          auto& out = cell[static_cast<std::size_t>(br.outcomes.at("m1"))];
          out.probability = br.probability;
          out.distribution = br.distribution;
        }
        for (auto& out : cell) out.cdf = cumulative(out.distribution);
      }
    const int sb = plan.num_b_qubits() - 1;
    for (PrepState prep : kAllPrepStates)
      for (Basis pb : kAllBases) {
        auto& cell = b_[static_cast<std::size_t>(prep_index(prep))][static_cast<std::size_t>(basis_index(pb))];
        for (const auto& br : exact_branches(plan.fragment_b_for(prep, pb))) {
          auto& out = cell[static_cast<std::size_t>(br.outcomes.at("m2"))];
          out.probability = br.probability;
          // Marginalize the cut qubit's final copy.
          out.distribution.assign(std::size_t{1} << sb, 0.0);
          for (std::size_t x = 0; x < br.distribution.size(); ++x)
            out.distribution[x & ((std::size_t{1} << sb) - 1)] += br.distribution[x];
        }
        for (auto& out : cell) out.cdf = cumulative(out.distribution);
      }
  }

  struct Branch {
    double probability = 0.0;
    std::vector<double> distribution;
    std::vector<double> cdf;
  };

  const Branch& a(Basis hb, PrepState prep, int m1) const {
    return a_[static_cast<std::size_t>(basis_index(hb))][static_cast<std::size_t>(prep_index(prep))]
             [static_cast<std::size_t>(m1)];
  }
  const Branch& b(PrepState prep, Basis pb, int m2) const {
    return b_[static_cast<std::size_t>(prep_index(prep))][static_cast<std::size_t>(basis_index(pb))]
             [static_cast<std::size_t>(m2)];
  }

  /// Noiseless shot drawn from the branch tables.
  CutShot sample(Rng& rng) const {
    static const auto harada = harada_terms();
    static const auto peng = peng_terms();
    CutShot shot;
    shot.harada_term = detail::draw_term(harada, 3.0, rng);
    shot.peng_term = detail::draw_term(peng, 4.0, rng);
    const QpdTerm& h = harada[shot.harada_term];
    const QpdTerm& p = peng[shot.peng_term];
    const Branch& a1 = a(h.measure_basis, p.prep, 1);
    shot.m1 = rng.uniform() < a1.probability ? 1 : 0;
    std::uint64_t a_bits = sample_index(a(h.measure_basis, p.prep, shot.m1).cdf, rng.uniform());
    PrepState prep = harada_preparation(h, shot.m1);
    const Branch& b1 = b(prep, p.measure_basis, 1);
    shot.m2 = rng.uniform() < b1.probability ? 1 : 0;
    std::uint64_t b_bits = sample_index(b(prep, p.measure_basis, shot.m2).cdf, rng.uniform());
    shot.sign = h.sign() * p.sign() * ((p.outcome_sign && shot.m2) ? -1 : 1);
    shot.bits = plan_->assemble(a_bits, b_bits);
    return shot;
  }

 private:
  const CutPlan* plan_;
  std::array<std::array<std::array<Branch, 2>, 6>, 3> a_;
  std::array<std::array<std::array<Branch, 2>, 3>, 6> b_;
};

enum class CutSampling {
  kAuto,      // branch tables when noiseless, shot protocol otherwise
  kProtocol,  // always simulate both fragments shot by shot
};

/// N shots; shot i draws from its own substream of `seed`, so the result is
/// independent of how shots are scheduled.
inline SignedSampleSet sample_cut(const CutPlan& plan, const std::optional<NoiseModel>& noise,
                                  std::size_t shots, std::uint64_t seed,
                                  CutSampling method = CutSampling::kAuto) {
  SignedSampleSet set;
  set.num_bits = plan.instance.num_vertices();
  set.kappa = plan.kappa;
  set.samples.reserve(shots);
  std::optional<CutBranchTable> table;
  if (!noise && method == CutSampling::kAuto) table.emplace(plan);
  for (std::size_t i = 0; i < shots; ++i) {
    Rng rng(derive_seed(seed, i));
    CutShot shot = table ? table->sample(rng) : sample_cut_shot(plan, noise, rng);
    set.samples.push_back({shot.bits, shot.sign});
  }
  return set;
}

/// q(x) = kappa / N * sum_i sign_i [x_i = x], an unbiased estimate of the
/// uncut output distribution.
inline std::map<std::uint64_t, double> reconstruct_distribution(const SignedSampleSet& set) {
  if (set.samples.empty()) throw ValidationError("cannot reconstruct from zero samples");
  std::map<std::uint64_t, double> q;
  const double w = set.kappa / static_cast<double>(set.samples.size());
  for (const auto& s : set.samples) q[s.bits] += w * s.sign;
  return q;
}

struct ExactCutDistribution {
  /// Sum over terms and branches of c_h c_p (signs) * probability; equals
  /// the uncut distribution.
  std::vector<double> signed_weights;
  /// Probability that a shot emits each bitstring, signs ignored.
  std::vector<double> raw;
};

inline constexpr int kExactCutLimit = 20;

/// Deterministic evaluation of the estimator: every Harada x Peng term pair
/// and every (m1, m2) branch with its exact probability.
inline ExactCutDistribution exact_cut_distribution(const CutPlan& plan) {
  int n = plan.instance.num_vertices();
  if (n > kExactCutLimit) throw ValidationError("exact cut evaluation limited to 20 vertices");
  CutBranchTable table(plan);
  ExactCutDistribution out;
  out.signed_weights.assign(std::size_t{1} << n, 0.0);
  out.raw.assign(std::size_t{1} << n, 0.0);

  const std::size_t a_dim = std::size_t{1} << plan.num_a_qubits();
  const std::size_t b_dim = std::size_t{1} << (plan.num_b_qubits() - 1);
  std::vector<std::uint64_t> a_pos(a_dim);
  std::vector<std::uint64_t> b_pos(b_dim);
  for (std::size_t i = 0; i < a_dim; ++i) a_pos[i] = plan.assemble(i, 0);
  for (std::size_t j = 0; j < b_dim; ++j) b_pos[j] = plan.assemble(0, j);

  const double kappa = plan.kappa;
  for (const auto& h : harada_terms())
    for (const auto& p : peng_terms())
      for (int m1 = 0; m1 < 2; ++m1) {
        const auto& ba = table.a(h.measure_basis, p.prep, m1);
        if (ba.probability == 0.0) continue;
        PrepState prep = harada_preparation(h, m1);
        for (int m2 = 0; m2 < 2; ++m2) {
          const auto& bb = table.b(prep, p.measure_basis, m2);
          if (bb.probability == 0.0) continue;
          double c = to_double(h.coefficient * p.coefficient);
          if (p.outcome_sign && m2) c = -c;
          double branch = ba.probability * bb.probability;
          double raw_w = std::abs(c) / kappa * branch;
          double signed_w = c * branch;
          for (std::size_t i = 0; i < a_dim; ++i) {
            double pa = ba.distribution[i];
            if (pa == 0.0) continue;
            for (std::size_t j = 0; j < b_dim; ++j) {
              double pab = pa * bb.distribution[j];
              std::uint64_t x = a_pos[i] | b_pos[j];
              out.signed_weights[x] += signed_w * pab;
              out.raw[x] += raw_w * pab;
            }
          }
        }
      }
  return out;
}

// ---------------------------------------------------------------------------
// Sample file: metadata lines starting with '#', a column header, then one
// "bitstring,sign" row per shot (bitstring lists vertex 0 first).
// ---------------------------------------------------------------------------

struct SampleFileMeta {
  double kappa = 1.0;
  std::uint64_t seed = 0;
  std::string plan_digest;
};

inline void write_samples_csv(std::ostream& out, const SignedSampleSet& set, const SampleFileMeta& meta) {
  out << "# kappa=" << meta.kappa << '\n'
      << "# N=" << set.samples.size() << '\n'
      << "# seed=" << meta.seed << '\n'
      << "# plan_digest=" << meta.plan_digest << '\n'
      << "bitstring,sign\n";
  std::string row(static_cast<std::size_t>(set.num_bits), '0');
  for (const auto& s : set.samples) {
    for (int k = 0; k < set.num_bits; ++k) row[static_cast<std::size_t>(k)] = ((s.bits >> k) & 1U) ? '1' : '0';
    out << row << ',' << (s.sign > 0 ? "1" : "-1") << '\n';
  }
}

inline SignedSampleSet read_samples_csv(std::istream& in, SampleFileMeta* meta = nullptr) {
  SignedSampleSet set;
  set.num_bits = -1;
  set.kappa = 1.0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(2, eq - 2);
      std::string value = line.substr(eq + 1);
      if (key == "kappa") set.kappa = std::stod(value);
      if (meta && key == "seed") meta->seed = std::stoull(value);
      if (meta && key == "plan_digest") meta->plan_digest = value;
      continue;
    }
    if (line == "bitstring,sign") continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(line_no, "expected 'bitstring,sign'");
    std::string bits = line.substr(0, comma);
    std::string sign = line.substr(comma + 1);
    if (sign != "1" && sign != "-1" && sign != "+1") throw ParseError(line_no, "sign must be 1 or -1");
    if (set.num_bits < 0) set.num_bits = static_cast<int>(bits.size());
    if (static_cast<int>(bits.size()) != set.num_bits || bits.size() > 64)
      throw ParseError(line_no, "inconsistent bitstring length");
    std::uint64_t x = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
      if (bits[k] != '0' && bits[k] != '1') throw ParseError(line_no, "bitstring must be 0/1");
      if (bits[k] == '1') x |= std::uint64_t{1} << k;
    }
    set.samples.push_back({x, sign == "-1" ? -1 : 1});
  }
  if (meta) meta->kappa = set.kappa;
  if (set.num_bits < 0) set.num_bits = 0;
  return set;
}

}  // namespace qcut

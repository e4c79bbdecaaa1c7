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

#include <set>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "qcut/errors.hpp"

namespace qcut {

enum class Basis { kX, kY, kZ };

/// Single-qubit eigenstates. Outcome 0 of a measurement in basis b
/// corresponds to the "+" (or |0>) eigenstate.
enum class PrepState { kZ0, kZ1, kXPlus, kXMinus, kYPlus, kYMinus };

constexpr PrepState eigenstate(Basis b, int outcome) {
  switch (b) {
    case Basis::kX: return outcome ? PrepState::kXMinus : PrepState::kXPlus;
    case Basis::kY: return outcome ? PrepState::kYMinus : PrepState::kYPlus;
    case Basis::kZ: break;
  }
  return outcome ? PrepState::kZ1 : PrepState::kZ0;
}

constexpr Basis basis_of(PrepState s) {
  switch (s) {
    case PrepState::kXPlus:
    case PrepState::kXMinus: return Basis::kX;
    case PrepState::kYPlus:
    case PrepState::kYMinus: return Basis::kY;
    default: return Basis::kZ;
  }
}

constexpr int outcome_of(PrepState s) {
  return (s == PrepState::kZ1 || s == PrepState::kXMinus || s == PrepState::kYMinus) ? 1 : 0;
}

inline const char* basis_name(Basis b) {
  switch (b) {
    case Basis::kX: return "X";
    case Basis::kY: return "Y";
    case Basis::kZ: break;
  }
  return "Z";
}

namespace op {

struct H { int q; };
/// exp(-i theta X / 2).
struct RX { int q; double theta; };
/// Phase exp(-i theta) on |1>, identity on |0> (no global phase).
struct RZ { int q; double theta; };
/// Phase exp(-i phi) on basis states with x_q1 != x_q2, identity otherwise.
struct ZZPhase { int q1; int q2; double phi; };
struct MeasureZ { int q; std::string tag; };
/// Projective measurement in `basis`; the qubit is left in the measured
/// eigenstate.
struct MeasureBasis { int q; Basis basis; std::string tag; };
/// Re-prepare a qubit that is unentangled (fresh or just measured).
struct ResetTo { int q; PrepState state; };
/// Sample every qubit in the computational basis.
struct MeasureAll { std::string tag; };

}  // namespace op

using Operation = std::variant<op::H, op::RX, op::RZ, op::ZZPhase, op::MeasureZ, op::MeasureBasis,
                               op::ResetTo, op::MeasureAll>;

/// Ordered gate list on a fixed number of qubits.
class Circuit {
 public:
  explicit Circuit(int num_qubits = 0) : num_qubits_(num_qubits) {}

  int num_qubits() const { return num_qubits_; }
  const std::vector<Operation>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }

  Circuit& h(int q) { return push(op::H{q}); }
  Circuit& rx(int q, double theta) { return push(op::RX{q, theta}); }
  Circuit& rz(int q, double theta) { return push(op::RZ{q, theta}); }
  Circuit& zz_phase(int q1, int q2, double phi) { return push(op::ZZPhase{q1, q2, phi}); }
  Circuit& measure_z(int q, std::string tag) { return push(op::MeasureZ{q, std::move(tag)}); }
  Circuit& measure(int q, Basis b, std::string tag) {
    return push(op::MeasureBasis{q, b, std::move(tag)});
  }
  Circuit& reset_to(int q, PrepState s) { return push(op::ResetTo{q, s}); }
  Circuit& measure_all(std::string tag) { return push(op::MeasureAll{std::move(tag)}); }

  Circuit& push(Operation o) {
    ops_.push_back(std::move(o));
    return *this;
  }

  /// Throws ValidationError unless qubit indices are in range, tags are
  /// unique and every ResetTo follows a single-qubit measurement (or nothing)
  /// on its wire.
  void validate() const {
    std::set<std::string> tags;
    // Last op kind per wire: 0 none, 1 single-qubit measurement, 2 other.
    std::vector<int> last(static_cast<std::size_t>(num_qubits_ > 0 ? num_qubits_ : 0), 0);
    auto check_q = [&](int q) {
      if (q < 0 || q >= num_qubits_)
        throw ValidationError("qubit index " + std::to_string(q) + " out of range");
    };
    auto check_tag = [&](const std::string& tag) {
      if (!tags.insert(tag).second) throw ValidationError("duplicate measurement tag '" + tag + "'");
    };
    for (const auto& o : ops_) {
      std::visit(
          [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, op::ZZPhase>) {
              check_q(g.q1);
              check_q(g.q2);
              if (g.q1 == g.q2) throw ValidationError("ZZPhase needs two distinct qubits");
              last[static_cast<std::size_t>(g.q1)] = last[static_cast<std::size_t>(g.q2)] = 2;
            } else if constexpr (std::is_same_v<T, op::MeasureAll>) {
              check_tag(g.tag);
              for (auto& l : last) l = 2;
            } else if constexpr (std::is_same_v<T, op::MeasureZ> ||
                                 std::is_same_v<T, op::MeasureBasis>) {
              check_q(g.q);
              check_tag(g.tag);
              last[static_cast<std::size_t>(g.q)] = 1;
            } else if constexpr (std::is_same_v<T, op::ResetTo>) {
              check_q(g.q);
              if (last[static_cast<std::size_t>(g.q)] == 2)
                throw ValidationError("ResetTo on qubit " + std::to_string(g.q) +
                                      " must follow a measurement or start the wire");
              last[static_cast<std::size_t>(g.q)] = 2;
            } else {
              check_q(g.q);
              last[static_cast<std::size_t>(g.q)] = 2;
            }
          },
          o);
    }
  }

 private:
  int num_qubits_;
  std::vector<Operation> ops_;
};

inline bool is_two_qubit(const Operation& o) { return std::holds_alternative<op::ZZPhase>(o); }

inline bool is_single_qubit_gate(const Operation& o) {
  return std::holds_alternative<op::H>(o) || std::holds_alternative<op::RX>(o) ||
         std::holds_alternative<op::RZ>(o);
}

}  // namespace qcut

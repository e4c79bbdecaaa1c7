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
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "qcut/circuit.hpp"
#include "qcut/errors.hpp"

namespace qcut {

using Amplitude = std::complex<double>;

/// Largest register the dense simulator allocates (2^26 amplitudes).
inline constexpr int kMaxQubits = 26;

enum class Pauli { kI, kX, kY, kZ };

/// Dense state vector; amplitude index bit k is qubit k.
class Statevector {
 public:
  explicit Statevector(int num_qubits) : n_(num_qubits) {
    if (num_qubits < 0 || num_qubits > kMaxQubits)
      throw ValidationError("register of " + std::to_string(num_qubits) +
                            " qubits exceeds the simulator limit of " +
                            std::to_string(kMaxQubits));
    amps_.assign(std::size_t{1} << n_, Amplitude(0.0, 0.0));
    amps_[0] = 1.0;
  }

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  std::vector<Amplitude>& amplitudes() { return amps_; }

  /// Apply a 2x2 matrix {{m00, m01}, {m10, m11}} to qubit q.
  void apply_matrix(int q, const std::array<Amplitude, 4>& m) {
    const std::size_t bit = std::size_t{1} << q;
    const std::size_t half = amps_.size() >> 1;
    for (std::size_t i = 0; i < half; ++i) {
      std::size_t i0 = ((i & ~(bit - 1)) << 1) | (i & (bit - 1));
      std::size_t i1 = i0 | bit;
      Amplitude a0 = amps_[i0];
      Amplitude a1 = amps_[i1];
      amps_[i0] = m[0] * a0 + m[1] * a1;
      amps_[i1] = m[2] * a0 + m[3] * a1;
    }
  }

  void apply_h(int q) {
    const double r = 1.0 / std::sqrt(2.0);
    apply_matrix(q, {r, r, r, -r});
  }

  void apply_rx(int q, double theta) {
    const double c = std::cos(theta / 2);
    const Amplitude s(0.0, -std::sin(theta / 2));
    const std::size_t bit = std::size_t{1} << q;
    const std::size_t half = amps_.size() >> 1;
    for (std::size_t i = 0; i < half; ++i) {
      std::size_t i0 = ((i & ~(bit - 1)) << 1) | (i & (bit - 1));
      std::size_t i1 = i0 | bit;
      Amplitude a0 = amps_[i0];
      Amplitude a1 = amps_[i1];
      amps_[i0] = c * a0 + s * a1;
      amps_[i1] = s * a0 + c * a1;
    }
  }

  void apply_rz(int q, double theta) {
    const Amplitude phase = std::polar(1.0, -theta);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i)
      if (i & bit) amps_[i] *= phase;
  }

  void apply_zz_phase(int q1, int q2, double phi) {
    const Amplitude phase = std::polar(1.0, -phi);
    for (std::size_t i = 0; i < amps_.size(); ++i)
      if (((i >> q1) ^ (i >> q2)) & 1U) amps_[i] *= phase;
  }

  void apply_pauli(int q, Pauli p) {
    const std::size_t bit = std::size_t{1} << q;
    switch (p) {
      case Pauli::kI: return;
      case Pauli::kX:
        for (std::size_t i = 0; i < amps_.size(); ++i)
          if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
        return;
      case Pauli::kY: apply_matrix(q, {0.0, Amplitude(0, -1), Amplitude(0, 1), 0.0}); return;
      case Pauli::kZ:
        for (std::size_t i = 0; i < amps_.size(); ++i)
          if (i & bit) amps_[i] = -amps_[i];
        return;
    }
  }

  /// Multiply amplitude x by exp(-i gamma cost[x]).
  void apply_diagonal_phase(const std::vector<double>& cost, double gamma) {
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] *= std::polar(1.0, -gamma * cost[i]);
  }

  /// Unitary taking the basis-b eigenstates to |0>, |1>.
  void rotate_to_z(int q, Basis b) {
    if (b == Basis::kX) {
      apply_h(q);
    } else if (b == Basis::kY) {
      apply_matrix(q, {1.0, 0.0, 0.0, Amplitude(0, -1)});  // S^dagger
      apply_h(q);
    }
  }

  void rotate_from_z(int q, Basis b) {
    if (b == Basis::kX) {
      apply_h(q);
    } else if (b == Basis::kY) {
      apply_h(q);
      apply_matrix(q, {1.0, 0.0, 0.0, Amplitude(0, 1)});  // S
    }
  }

  double probability_one(int q) const {
    const std::size_t bit = std::size_t{1} << q;
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
      if (i & bit) p += std::norm(amps_[i]);
    return p;
  }

  /// Probability of `outcome` when measuring q in basis b.
  double outcome_probability(int q, Basis b, int outcome) {
    rotate_to_z(q, b);
    double p1 = probability_one(q);
    rotate_from_z(q, b);
    return outcome ? p1 : 1.0 - p1;
  }

  /// Project q onto computational value `bit` and renormalize.
  void collapse(int q, int bit) {
    const std::size_t mask = std::size_t{1} << q;
    double keep = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (((i & mask) != 0) == (bit != 0)) {
        keep += std::norm(amps_[i]);
      } else {
        amps_[i] = 0.0;
      }
    }
    if (keep <= 0.0) throw ValidationError("collapse onto a zero-probability outcome");
    const double scale = 1.0 / std::sqrt(keep);
    for (auto& a : amps_) a *= scale;
  }

  /// Project q onto the basis-b eigenstate for `outcome`.
  void project(int q, Basis b, int outcome) {
    rotate_to_z(q, b);
    collapse(q, outcome);
    rotate_from_z(q, b);
  }

  /// Measure q in basis b; `u` is a uniform draw in [0, 1).
  int measure(int q, Basis b, double u) {
    rotate_to_z(q, b);
    double p1 = probability_one(q);
    int bit = u < p1 ? 1 : 0;
    collapse(q, bit);
    rotate_from_z(q, b);
    return bit;
  }

  /// Replace the state of q, which must be unentangled, by `state`.
  void reset_to(int q, PrepState state) {
    const std::size_t bit = std::size_t{1} << q;
    // q is a product factor phi; the branch with the larger |phi_b| gives
    // the rest of the register up to a global phase.
    double n0 = 0.0;
    double n1 = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) (i & bit ? n1 : n0) += std::norm(amps_[i]);
    const bool from_one = n1 > n0;
    const double scale = 1.0 / std::sqrt(from_one ? n1 : n0);
    const auto psi = prep_amplitudes(state);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (i & bit) continue;
      Amplitude rest = amps_[from_one ? (i | bit) : i] * scale;
      amps_[i] = psi[0] * rest;
      amps_[i | bit] = psi[1] * rest;
    }
  }

  static std::array<Amplitude, 2> prep_amplitudes(PrepState s) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (s) {
      case PrepState::kZ0: return {1.0, 0.0};
      case PrepState::kZ1: return {0.0, 1.0};
      case PrepState::kXPlus: return {r, r};
      case PrepState::kXMinus: return {r, -r};
      case PrepState::kYPlus: return {r, Amplitude(0, r)};
      case PrepState::kYMinus: return {r, Amplitude(0, -r)};
    }
    return {1.0, 0.0};
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
    return p;
  }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  /// Little-endian complex64 (re, im) pairs, index = bitstring.
  void dump(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path);
    for (const auto& a : amps_) {
      float pair[2] = {static_cast<float>(a.real()), static_cast<float>(a.imag())};
      out.write(reinterpret_cast<const char*>(pair), sizeof pair);
    }
  }

 private:
  int n_;
  std::vector<Amplitude> amps_;
};

}  // namespace qcut

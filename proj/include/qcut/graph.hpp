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
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcut/errors.hpp"
#include "qcut/rational.hpp"

namespace qcut {

/// One 0/1 entry per vertex.
using Bits = std::vector<std::uint8_t>;

struct Edge {
  int u = 0;
  int v = 0;
  Rational w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted MaxCut problem with optional linear terms and a constant:
///
///   objective(x) = offset + sum_{(u,v,w)} w [x_u != x_v] + sum_v h_v x_v
///
/// Edges are stored once per unordered pair with u < v, sorted, and never
/// with zero weight. Instances are immutable after construction.
class MaxCutInstance {
 public:
  MaxCutInstance() = default;

  MaxCutInstance(int n, const std::vector<Edge>& edges,
                 std::vector<Rational> linear = {}, Rational offset = 0)
      : n_(n), linear_(std::move(linear)), offset_(offset) {
    if (n < 0) throw ValidationError("negative vertex count");
    if (linear_.empty()) linear_.assign(static_cast<std::size_t>(n), Rational(0));
    if (linear_.size() != static_cast<std::size_t>(n))
      throw ValidationError("linear term vector does not match vertex count");
    std::map<std::pair<int, int>, Rational> merged;
    for (const Edge& e : edges) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
        throw ValidationError("edge endpoint out of range");
      if (e.u == e.v) throw ValidationError("self-loop on vertex " + std::to_string(e.u));
      merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.w;
    }
    for (const auto& [key, w] : merged)
      if (w != Rational(0)) edges_.push_back({key.first, key.second, w});
  }

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Rational>& linear() const { return linear_; }
  const Rational& linear(int v) const { return linear_[static_cast<std::size_t>(v)]; }
  const Rational& offset() const { return offset_; }

  bool has_linear_terms() const {
    return std::any_of(linear_.begin(), linear_.end(),
                       [](const Rational& h) { return h != Rational(0); });
  }

  /// Neighbour lists: adjacency()[u] holds (v, w) for every edge touching u.
  std::vector<std::vector<std::pair<int, Rational>>> adjacency() const {
    std::vector<std::vector<std::pair<int, Rational>>> adj(static_cast<std::size_t>(n_));
    for (const Edge& e : edges_) {
      adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
      adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.w);
    }
    return adj;
  }

  Rational total_edge_weight() const {
    Rational total = 0;
    for (const Edge& e : edges_) total += e.w;
    return total;
  }

  /// Mean objective over uniformly random assignments.
  Rational uniform_expectation() const {
    Rational total = offset_ + total_edge_weight() / 2;
    for (const Rational& h : linear_) total += h / 2;
    return total;
  }

  friend bool operator==(const MaxCutInstance&, const MaxCutInstance&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Rational> linear_;
  Rational offset_ = 0;
};

/// Exact objective of assignment x.
inline Rational cut_value(const MaxCutInstance& inst, const Bits& x) {
  if (x.size() != static_cast<std::size_t>(inst.num_vertices()))
    throw ValidationError("assignment length " + std::to_string(x.size()) +
                          " does not match vertex count " +
                          std::to_string(inst.num_vertices()));
  Rational value = inst.offset();
  for (const Edge& e : inst.edges())
    if (x[static_cast<std::size_t>(e.u)] != x[static_cast<std::size_t>(e.v)]) value += e.w;
  for (int v = 0; v < inst.num_vertices(); ++v)
    if (x[static_cast<std::size_t>(v)]) value += inst.linear(v);
  return value;
}

/// Bit k of mask is the value of vertex k.
inline Bits bits_from_mask(std::uint64_t mask, int n) {
  Bits x(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = (mask >> k) & 1U;
  return x;
}

inline std::uint64_t mask_from_bits(const Bits& x) {
  std::uint64_t mask = 0;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k]) mask |= std::uint64_t{1} << k;
  return mask;
}

/// "0110..." with vertex 0 first.
inline std::string bits_to_string(const Bits& x) {
  std::string s;
  s.reserve(x.size());
  for (auto b : x) s.push_back(b ? '1' : '0');
  return s;
}

inline Bits bits_from_string(std::string_view s) {
  Bits x;
  x.reserve(s.size());
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw ValidationError("bitstring contains '" + std::string(1, ch) + "'");
    x.push_back(ch == '1');
  }
  return x;
}

/// The instance scaled to integers: scaled objective = scale * objective.
/// Used wherever millions of assignments are evaluated exactly.
class ScaledObjective {
 public:
  explicit ScaledObjective(const MaxCutInstance& inst) : n_(inst.num_vertices()) {
    std::int64_t lcm = inst.offset().denominator();
    for (const Edge& e : inst.edges()) lcm = std::lcm(lcm, e.w.denominator());
    for (const Rational& h : inst.linear()) lcm = std::lcm(lcm, h.denominator());
    scale_ = lcm;
    auto scaled = [&](const Rational& r) { return r.numerator() * (lcm / r.denominator()); };
    offset_ = scaled(inst.offset());
    for (const Edge& e : inst.edges()) edges_.push_back({e.u, e.v, scaled(e.w)});
    for (const Rational& h : inst.linear()) linear_.push_back(scaled(h));
  }

  struct IntEdge {
    int u;
    int v;
    std::int64_t w;
  };

  int num_vertices() const { return n_; }
  std::int64_t scale() const { return scale_; }
  std::int64_t offset() const { return offset_; }
  const std::vector<IntEdge>& edges() const { return edges_; }
  const std::vector<std::int64_t>& linear() const { return linear_; }

  std::int64_t value(std::uint64_t mask) const {
    std::int64_t total = offset_;
    for (const IntEdge& e : edges_)
      if (((mask >> e.u) ^ (mask >> e.v)) & 1U) total += e.w;
    for (int v = 0; v < n_; ++v)
      if ((mask >> v) & 1U) total += linear_[static_cast<std::size_t>(v)];
    return total;
  }

  Rational to_rational(std::int64_t scaled) const { return Rational(scaled, scale_); }

 private:
  int n_;
  std::int64_t scale_ = 1;
  std::int64_t offset_ = 0;
  std::vector<IntEdge> edges_;
  std::vector<std::int64_t> linear_;
};

// ---------------------------------------------------------------------------
// Instance text format
//
//   n m              header (m is informational)
//   u v w            one line per edge, 0-indexed, w decimal or p/q
//   h v value        optional linear term
//   o value          optional constant offset
//   # ...            comment to end of line
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

inline bool parse_int(const std::string& s, long long& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') return false;
  try {
    out = std::stoll(s);
  } catch (...) {
    return false;
  }
  return true;
}

}  // namespace detail

inline MaxCutInstance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  long long n = 0;
  std::vector<Edge> edges;
  std::vector<Rational> linear;
  Rational offset = 0;

  auto vertex = [&](const std::string& tok) {
    long long v = 0;
    if (!detail::parse_int(tok, v)) throw ParseError(line_no, "vertex id '" + tok + "' is not an integer");
    if (v < 0 || v >= n) throw ParseError(line_no, "vertex id " + tok + " out of range");
    return static_cast<int>(v);
  };
  auto weight = [&](const std::string& tok) {
    auto w = parse_rational(tok);
    if (!w) throw ParseError(line_no, "weight '" + tok + "' is not numeric");
    return *w;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = detail::split_tokens(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      long long m = 0;
      if (tokens.size() != 2 || !detail::parse_int(tokens[0], n) ||
          !detail::parse_int(tokens[1], m) || n < 0 || m < 0)
        throw ParseError(line_no, "malformed header, expected 'n m'");
      if (n > 1'000'000) throw ParseError(line_no, "vertex count too large");
      linear.assign(static_cast<std::size_t>(n), Rational(0));
      have_header = true;
      continue;
    }
    if (tokens[0] == "h") {
      if (tokens.size() != 3) throw ParseError(line_no, "expected 'h v value'");
      linear[static_cast<std::size_t>(vertex(tokens[1]))] += weight(tokens[2]);
    } else if (tokens[0] == "o") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected 'o value'");
      offset += weight(tokens[1]);
    } else {
      if (tokens.size() != 3) throw ParseError(line_no, "expected 'u v w'");
      int u = vertex(tokens[0]);
      int v = vertex(tokens[1]);
      if (u == v) throw ParseError(line_no, "self-loop on vertex " + tokens[0]);
      edges.push_back({u, v, weight(tokens[2])});
    }
  }
  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "missing header");
  return MaxCutInstance(static_cast<int>(n), edges, std::move(linear), offset);
}

/// Canonical text: edges sorted, nonzero linear terms, offset when nonzero.
inline std::string write_instance(const MaxCutInstance& inst) {
  std::ostringstream out;
  out << inst.num_vertices() << ' ' << inst.num_edges() << '\n';
  for (const Edge& e : inst.edges()) out << e.u << ' ' << e.v << ' ' << format_rational(e.w) << '\n';
  for (int v = 0; v < inst.num_vertices(); ++v)
    if (inst.linear(v) != Rational(0)) out << "h " << v << ' ' << format_rational(inst.linear(v)) << '\n';
  if (inst.offset() != Rational(0)) out << "o " << format_rational(inst.offset()) << '\n';
  return out.str();
}

/// FNV-1a over arbitrary text, as 16 hex digits.
inline std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string instance_digest(const MaxCutInstance& inst) {
  return fnv1a_hex(write_instance(inst));
}

}  // namespace qcut

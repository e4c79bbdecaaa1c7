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

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qcut {

/// Exact edge weights and objective values.
using Rational = boost::rational<std::int64_t>;

/// Parses "3", "-1.25", "+.5" or "7/3". Returns nullopt on malformed text.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_rational(text.substr(0, slash));
    auto den = parse_rational(text.substr(slash + 1));
    if (!num || !den || num->denominator() != 1 || den->denominator() != 1 ||
        den->numerator() <= 0)
      return std::nullopt;
    return Rational(num->numerator(), den->numerator());
  }
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    ++i;
  }
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '.') {
      if (seen_point) return std::nullopt;
      seen_point = true;
      continue;
    }
    if (ch < '0' || ch > '9') return std::nullopt;
    if (num > (INT64_MAX - 9) / 10 || (seen_point && den > INT64_MAX / 10))
      return std::nullopt;
    num = num * 10 + (ch - '0');
    if (seen_point) den *= 10;
    seen_digit = true;
  }
  if (!seen_digit) return std::nullopt;
  return Rational(negative ? -num : num, den);
}

/// Decimal text when the value has a terminating decimal expansion, "p/q"
/// otherwise. Round-trips through parse_rational.
inline std::string format_rational(const Rational& r) {
  std::int64_t den = r.denominator();
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  int digits = std::max(twos, fives);
  if (den != 1 || digits > 15)
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
  std::int64_t scale = 1;
  for (int k = 0; k < digits; ++k) scale *= 10;
  std::int64_t scaled = r.numerator() * (scale / r.denominator());
  std::string sign = scaled < 0 ? "-" : "";
  std::uint64_t mag = scaled < 0 ? static_cast<std::uint64_t>(-scaled)
                                 : static_cast<std::uint64_t>(scaled);
  std::string whole = std::to_string(mag / static_cast<std::uint64_t>(scale));
  if (digits == 0) return sign + whole;
  std::string frac = std::to_string(mag % static_cast<std::uint64_t>(scale));
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  return sign + whole + "." + frac;
}

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

}  // namespace qcut

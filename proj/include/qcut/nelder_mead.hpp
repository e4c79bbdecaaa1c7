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
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace qcut {

struct NelderMeadOptions {
  int max_evaluations = 500;
  /// Stop once every simplex vertex is within this distance of the best
  /// vertex in every coordinate.
  double xtol = 1e-4;
  double initial_step = 0.1;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::quiet_NaN();
  int evaluations = 0;
};

/// Downhill simplex minimization. The starting point is the first vertex, so
/// the result is never worse than f(x0) once x0 has been evaluated.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0, const NelderMeadOptions& opt = {}) {
  NelderMeadResult result{x0, std::numeric_limits<double>::quiet_NaN(), 0};
  if (opt.max_evaluations <= 0 || x0.empty()) return result;

  const std::size_t dim = x0.size();
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    return f(x);
  };
  auto budget_left = [&] { return result.evaluations < opt.max_evaluations; };

  std::vector<std::vector<double>> simplex{x0};
  std::vector<double> values{eval(x0)};
  for (std::size_t i = 0; i < dim && budget_left(); ++i) {
    auto x = x0;
    x[i] += opt.initial_step;
    simplex.push_back(x);
    values.push_back(eval(x));
  }

  std::vector<std::size_t> order(simplex.size());
  auto sort_simplex = [&] {
    order.resize(simplex.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::vector<double>> s;
    std::vector<double> v;
    for (auto i : order) {
      s.push_back(simplex[i]);
      v.push_back(values[i]);
    }
    simplex.swap(s);
    values.swap(v);
  };
  auto converged = [&] {
    for (std::size_t j = 1; j < simplex.size(); ++j)
      for (std::size_t i = 0; i < dim; ++i)
        if (std::abs(simplex[j][i] - simplex[0][i]) > opt.xtol) return false;
    return true;
  };
  auto lerp = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
  };

  // Incomplete simplex only happens when the budget ran out while building it.
  while (simplex.size() == dim + 1 && budget_left()) {
    sort_simplex();
    if (converged()) break;
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[j][i] / static_cast<double>(dim);
    const auto& worst = simplex[dim];

    auto reflected = lerp(centroid, worst, -1.0);
    double fr = eval(reflected);
    if (fr < values[0]) {
      if (!budget_left()) {
        simplex[dim] = reflected, values[dim] = fr;
        break;
      }
      auto expanded = lerp(centroid, worst, -2.0);
      double fe = eval(expanded);
      if (fe < fr) simplex[dim] = expanded, values[dim] = fe;
      else simplex[dim] = reflected, values[dim] = fr;
    } else if (fr < values[dim - 1]) {
      simplex[dim] = reflected, values[dim] = fr;
    } else {
      if (!budget_left()) break;
      bool outside = fr < values[dim];
      auto contracted = outside ? lerp(centroid, reflected, 0.5) : lerp(centroid, worst, 0.5);
      double fc = eval(contracted);
      if (fc < std::min(fr, values[dim])) {
        simplex[dim] = contracted, values[dim] = fc;
      } else {
        for (std::size_t j = 1; j <= dim && budget_left(); ++j) {
          simplex[j] = lerp(simplex[0], simplex[j], 0.5);
          values[j] = eval(simplex[j]);
        }
      }
    }
  }

  auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  return result;
}

}  // namespace qcut

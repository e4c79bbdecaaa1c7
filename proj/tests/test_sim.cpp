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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "oracles.hpp"
#include "qcut/qaoa.hpp"
#include "qcut/simulator.hpp"

namespace qcut {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Circuit, ValidationCatchesBadCircuits) {
  EXPECT_THROW(Circuit(2).h(2).validate(), ValidationError);
  EXPECT_THROW(Circuit(2).zz_phase(1, 1, 0.3).validate(), ValidationError);
  EXPECT_THROW(Circuit(2).measure_z(0, "m").measure_z(1, "m").validate(), ValidationError);
  EXPECT_THROW(Circuit(2).h(0).reset_to(0, PrepState::kXPlus).validate(), ValidationError);
  EXPECT_NO_THROW(Circuit(2).reset_to(0, PrepState::kXPlus).validate());
  EXPECT_NO_THROW(Circuit(2).h(0).measure(0, Basis::kY, "m").reset_to(0, PrepState::kZ1).validate());
}

TEST(RunShot, HadamardIsFair) {
  Circuit c(1);
  c.h(0).measure_all("x");
  int ones = 0;
  const int shots = 100000;
  for (int i = 0; i < shots; ++i) {
    Rng rng(derive_seed(5, static_cast<std::uint64_t>(i)));
    ones += static_cast<int>(run_shot(c, std::nullopt, rng).outcomes.at("x"));
  }
  EXPECT_NEAR(ones / static_cast<double>(shots), 0.5, 0.01);
}

TEST(RunShot, DiagonalGateKeepsBasisState) {
  Circuit c(2);
  c.zz_phase(0, 1, 0.7).measure_all("x");
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(run_shot(c, std::nullopt, rng).outcomes.at("x"), 0u);
}

TEST(RunShot, RxPiFlips) {
  Circuit c(1);
  c.rx(0, kPi).measure_z(0, "m");
  Rng rng(2);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(run_shot(c, std::nullopt, rng).outcomes.at("m"), 1u);
}

TEST(RunShot, ResultHoldsEveryTag) {
  Circuit c(3);
  c.h(0).measure(0, Basis::kX, "m1").reset_to(0, PrepState::kYPlus).measure_z(1, "m2").measure_all("x");
  Rng rng(3);
  auto r = run_shot(c, std::nullopt, rng);
  EXPECT_EQ(r.outcomes.size(), 3u);
  EXPECT_EQ(r.outcomes.at("m1"), 0u);  // H|0> = |+>
}

TEST(RunShot, TooManyQubits) {
  EXPECT_THROW(Statevector(kMaxQubits + 1), ValidationError);
}

TEST(RunShot, XPlusMeasuredInXGivesZero) {
  Circuit c(1);
  c.reset_to(0, PrepState::kXPlus).measure(0, Basis::kX, "m").measure_all("x");
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(s);
    EXPECT_EQ(run_shot(c, std::nullopt, rng).outcomes.at("m"), 0u);
  }
}

TEST(RunShot, MeasuredEigenstateSurvives) {
  // After a Y measurement the qubit is a Y eigenstate: measuring Y again agrees.
  Circuit c(1);
  c.h(0).rz(0, 0.4).measure(0, Basis::kY, "a").measure(0, Basis::kY, "b").measure_all("x");
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(s);
    auto r = run_shot(c, std::nullopt, rng);
    EXPECT_EQ(r.outcomes.at("a"), r.outcomes.at("b"));
  }
}

TEST(RunShot, ZeroNoiseMatchesNoiselessPath) {
  Circuit c(3);
  c.h(0).h(1).zz_phase(0, 1, 0.3).rx(2, 0.9).zz_phase(1, 2, -0.5).measure(1, Basis::kX, "m").measure_all("x");
  NoiseModel zero{0.0, 0.0, 0.0};
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng a(s), b(s);
    EXPECT_EQ(run_shot(c, std::nullopt, a).outcomes, run_shot(c, zero, b).outcomes);
  }
}

TEST(RunShot, ReadoutNoiseFlipsAtTheConfiguredRate) {
  Circuit c(1);
  c.measure_all("x");
  NoiseModel ro{0.0, 0.0, 0.1};
  int ones = 0;
  for (std::uint64_t s = 0; s < 20000; ++s) {
    Rng rng(derive_seed(9, s));
    ones += static_cast<int>(run_shot(c, ro, rng).outcomes.at("x"));
  }
  EXPECT_NEAR(ones / 20000.0, 0.1, 0.01);
}

TEST(RunShot, CertainGateNoiseRandomizesOutcomes) {
  // p1 = 1: after RX(0) a random X, Y or Z hits; X and Y flip |0>.
  Circuit c(1);
  c.rx(0, 0.0).measure_all("x");
  NoiseModel n{1.0, 0.0, 0.0};
  int ones = 0;
  for (std::uint64_t s = 0; s < 30000; ++s) {
    Rng rng(derive_seed(4, s));
    ones += static_cast<int>(run_shot(c, n, rng).outcomes.at("x"));
  }
  EXPECT_NEAR(ones / 30000.0, 2.0 / 3.0, 0.015);
  // p2 = 1 on ZZPhase: 8 of the 15 two-qubit Paulis flip qubit 0.
  Circuit d(2);
  d.zz_phase(0, 1, 0.0).measure_all("x");
  NoiseModel n2{0.0, 1.0, 0.0};
  int flips = 0;
  for (std::uint64_t s = 0; s < 30000; ++s) {
    Rng rng(derive_seed(8, s));
    flips += static_cast<int>(run_shot(d, n2, rng).outcomes.at("x") & 1U);
  }
  EXPECT_NEAR(flips / 30000.0, 8.0 / 15.0, 0.015);
}

TEST(RunShot, RejectsInvalidNoise) {
  Circuit c(1);
  c.measure_all("x");
  Rng rng(0);
  EXPECT_THROW(run_shot(c, NoiseModel{1.5, 0.0, 0.0}, rng), ValidationError);
}

TEST(Statevector, NormPreservedByGates) {
  Statevector sv(4);
  Rng rng(7);
  for (int step = 0; step < 200; ++step) {
    int q = static_cast<int>(rng.below(4));
    int r = static_cast<int>((q + 1 + rng.below(3)) % 4);
    switch (rng.below(4)) {
      case 0: sv.apply_h(q); break;
      case 1: sv.apply_rx(q, rng.uniform() * 6); break;
      case 2: sv.apply_rz(q, rng.uniform() * 6); break;
      default: sv.apply_zz_phase(q, r, rng.uniform() * 6); break;
    }
    ASSERT_NEAR(sv.norm_squared(), 1.0, 1e-10);
  }
  sv.measure(2, Basis::kY, 0.3);
  EXPECT_NEAR(sv.norm_squared(), 1.0, 1e-12);
}

TEST(Statevector, ZZPhaseConvention) {
  const double phi = 0.37;
  for (std::size_t basis = 0; basis < 4; ++basis) {
    Statevector sv(2);
    sv.amplitudes()[0] = 0.0;
    sv.amplitudes()[basis] = 1.0;
    sv.apply_zz_phase(0, 1, phi);
    bool anti = (basis & 1U) != ((basis >> 1) & 1U);
    std::complex<double> expected = anti ? std::polar(1.0, -phi) : 1.0;
    EXPECT_NEAR(std::abs(sv.amplitudes()[basis] - expected), 0.0, 1e-15);
  }
}

TEST(Statevector, RxMatchesOracleMatrix) {
  Statevector sv(2);
  sv.apply_h(0);
  sv.apply_rx(1, 0.8);
  sv.apply_rx(0, -1.3);
  std::vector<oracle::Cx> psi{1, 0, 0, 0};
  double r = 1 / std::sqrt(2.0);
  psi = oracle::apply_1q(psi, 0, {{{r, r}, {r, -r}}});
  psi = oracle::apply_1q(psi, 1, oracle::rx_matrix(0.8));
  psi = oracle::apply_1q(psi, 0, oracle::rx_matrix(-1.3));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(sv.amplitudes()[i] - psi[i]), 0.0, 1e-14);
}

TEST(Statevector, ResetReplacesAnUnentangledQubit) {
  Statevector sv(2);
  sv.apply_h(0);
  sv.apply_rx(1, 1.1);
  sv.measure(1, Basis::kX, 0.9);
  sv.reset_to(1, PrepState::kYMinus);
  sv.rotate_to_z(1, Basis::kY);
  EXPECT_NEAR(sv.probability_one(1), 1.0, 1e-12);
  EXPECT_NEAR(sv.probability_one(0), 0.5, 1e-12);
}

TEST(Statevector, DumpWritesComplex64Pairs) {
  Statevector sv(2);
  sv.apply_h(1);
  auto path = std::filesystem::temp_directory_path() / "qcut_dump_test.bin";
  sv.dump(path.string());
  std::ifstream in(path, std::ios::binary);
  std::vector<float> data(8);
  in.read(reinterpret_cast<char*>(data.data()), 32);
  EXPECT_EQ(in.gcount(), 32);
  EXPECT_NEAR(data[0], 1 / std::sqrt(2.0f), 1e-6);
  EXPECT_EQ(data[2], 0.0f);
  EXPECT_NEAR(data[4], 1 / std::sqrt(2.0f), 1e-6);
  std::filesystem::remove(path);
}

TEST(ExactDistribution, Examples) {
  Circuit h(1);
  h.h(0).measure_all("x");
  auto d = exact_distribution(h);
  EXPECT_NEAR(d[0], 0.5, 1e-15);
  EXPECT_NEAR(d[1], 0.5, 1e-15);
  Circuit empty(2);
  empty.measure_all("x");
  EXPECT_EQ(exact_distribution(empty), (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
}

TEST(ExactDistribution, ConditioningOnMidCircuitOutcome) {
  Circuit c(2);
  c.h(0).zz_phase(0, 1, 0.2).h(1).measure_z(0, "m").measure_all("x");
  auto d1 = exact_distribution(c, {{"m", 1}});
  EXPECT_NEAR(d1[1] + d1[3], 1.0, 1e-12);
  auto all = exact_distribution(c);
  double s = 0;
  for (double p : all) s += p;
  EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(ExactDistribution, RejectsTooManyBranchPoints) {
  Circuit c(1);
  c.measure_z(0, "a").measure_z(0, "b").measure_z(0, "c").measure_all("x");
  EXPECT_THROW(exact_distribution(c), ValidationError);
  Circuit no_final(1);
  no_final.h(0);
  EXPECT_THROW(exact_distribution(no_final), ValidationError);
}

// K2 at p = 1 with everything written out as 4x4 matrices.
std::vector<double> k2_matrix_oracle(double gamma, double beta) {
  using oracle::Cx;
  std::array<Cx, 4> psi{0.5, 0.5, 0.5, 0.5};
  std::array<Cx, 4> phase{1, std::polar(1.0, -gamma), std::polar(1.0, -gamma), 1};
  for (int i = 0; i < 4; ++i) psi[static_cast<std::size_t>(i)] *= phase[static_cast<std::size_t>(i)];
  Cx c = std::cos(beta), s(0, -std::sin(beta));
  // RX(2b) (x) RX(2b) as a 4x4 matrix
  std::array<std::array<Cx, 2>, 2> m{{{c, s}, {s, c}}};
  std::array<Cx, 4> out{};
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k)
      out[static_cast<std::size_t>(r)] += m[static_cast<std::size_t>(r & 1)][static_cast<std::size_t>(k & 1)] *
                                          m[static_cast<std::size_t>(r >> 1)][static_cast<std::size_t>(k >> 1)] *
                                          psi[static_cast<std::size_t>(k)];
  std::vector<double> p;
  for (auto a : out) p.push_back(std::norm(a));
  return p;
}

// Best (gamma, beta) on a grid, scored by the oracle.
std::pair<double, double> k2_grid_optimum() {
  double best = -1, bg = 0, bb = 0;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) {
      double g = kPi * i / 200, b = kPi / 2 * j / 200;
      auto p = k2_matrix_oracle(g, b);
      if (p[1] + p[2] > best) {
        best = p[1] + p[2];
        bg = g;
        bb = b;
      }
    }
  return {bg, bb};
}

TEST(ExactDistribution, TrainedK2MatchesMatrixOracle) {
  auto [g, b] = k2_grid_optimum();
  MaxCutInstance k2(2, {{0, 1, 1}});
  QaoaParams params{1, {g}, {b}};
  auto d = exact_distribution(build_qaoa(k2, params));
  auto ref = k2_matrix_oracle(g, b);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(d[i], ref[i], 1e-12);
  EXPECT_GE(d[1] + d[2], 0.99);
  EXPECT_NEAR(d[1], 0.5, 0.01);
}

TEST(Expectation, UniformSuperposition) {
  MaxCutInstance k2(2, {{0, 1, 1}});
  Circuit c(2);
  c.h(0).h(1).measure_all("x");
  EXPECT_NEAR(expectation_of_objective(c, k2), 0.5, 1e-15);
  auto inst = oracle::random_weighted(6, 0.6, 12);
  Circuit u(6);
  for (int q = 0; q < 6; ++q) u.h(q);
  u.measure_all("x");
  EXPECT_NEAR(expectation_of_objective(u, inst), to_double(inst.uniform_expectation()), 1e-12);
  EXPECT_NEAR(to_double(inst.uniform_expectation()),
              to_double(inst.offset() + inst.total_edge_weight() / 2), 1e-15);
  EXPECT_THROW(expectation_of_objective(c, inst), ValidationError);
}

TEST(Expectation, TrainedK2) {
  auto [g, b] = k2_grid_optimum();
  MaxCutInstance k2(2, {{0, 1, 1}});
  EXPECT_GE(expectation_of_objective(build_qaoa(k2, {1, {g}, {b}}), k2), 0.99);
}

TEST(Trajectory, ReuseDrawsFromTheSameState) {
  Circuit c(2);
  c.h(0).measure_all("x");
  Rng rng(11);
  auto xs = sample_trajectory(c, std::nullopt, rng, 4000);
  int ones = 0;
  for (auto x : xs) {
    EXPECT_LE(x, 1u);
    ones += static_cast<int>(x);
  }
  EXPECT_NEAR(ones / 4000.0, 0.5, 0.04);
}

TEST(Sampling, IndexSearchHandlesEdges) {
  auto cdf = cumulative({0.25, 0.0, 0.75});
  EXPECT_EQ(sample_index(cdf, 0.0), 0u);
  EXPECT_EQ(sample_index(cdf, 0.2499), 0u);
  EXPECT_EQ(sample_index(cdf, 0.25), 2u);
  EXPECT_EQ(sample_index(cdf, 0.999999), 2u);
}

}  // namespace
}  // namespace qcut

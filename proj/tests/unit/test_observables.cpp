// Copyright 2026 The kharper Authors
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
#include <random>

#include "dense.hpp"
#include "kharper/observables.hpp"

namespace kharper {
namespace {

std::vector<double> two_sided_exponential(std::size_t N, std::size_t centre, double l) {
  std::vector<double> p(N);
  double s = 0;
  for (std::size_t n = 0; n < N; ++n) {
    const double d = std::abs(static_cast<double>(n) - static_cast<double>(centre));
    p[n] = std::exp(-2 * std::min(d, N - d) / l);
    s += p[n];
  }
  for (auto& v : p) v /= s;
  return p;
}

// Direct evaluation of the smoothed density, O(N^3).
std::vector<double> husimi_oracle(const std::vector<cplx>& psi, double P, double Q) {
  const long N = static_cast<long>(psi.size());
  const double pref = std::sqrt(2 * P / (Q * std::pow(double(N), 3)));
  std::vector<double> out(N * N);
  for (long n = 0; n < N; ++n) {
    for (long t = 0; t < N; ++t) {
      cplx s = 0;
      for (long d = -N / 2 + 1; d <= N / 2; ++d) {
        s += psi[((n + d) % N + N) % N] * std::exp(-kPi * P * d * d / (N * Q)) *
             std::polar(1.0, -kTwoPi * double(d * t) / N);
      }
      out[n * N + t] = pref * std::norm(s);
    }
  }
  return out;
}

std::vector<cplx> random_wave(std::size_t N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> psi(N);
  double s = 0;
  for (auto& v : psi) {
    v = {g(rng), g(rng)};
    s += std::norm(v);
  }
  for (auto& v : psi) v /= std::sqrt(s);
  return psi;
}

TEST(Distribution, TracesOutAncilla) {
  QuantumState s = testing::random_state(4, 3, {0, 3}, 3);
  const auto p = momentum_distribution(s);
  ASSERT_EQ(p.size(), 8u);
  for (std::size_t n = 0; n < 8; ++n) EXPECT_NEAR(p[n], std::norm(s[n]) + std::norm(s[n + 8]), 1e-15);
}

TEST(Ipr, KnownValues) {
  EXPECT_DOUBLE_EQ(ipr(std::vector<double>{0, 1, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(ipr(std::vector<double>(16, 1.0 / 16)), 16.0);
  EXPECT_DOUBLE_EQ(ipr(std::vector<double>{0.5, 0.5, 0, 0}), 2.0);
  EXPECT_THROW(ipr(std::vector<double>(4, 0.0)), std::invalid_argument);
}

TEST(Ipr, BoundedByDimension) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = momentum_distribution(testing::random_state(6, seed));
    const double xi = ipr(p);
    EXPECT_GE(xi, 1.0);
    EXPECT_LE(xi, 64.0 + 1e-9);
  }
}

TEST(Moments, SecondMoment) {
  std::vector<double> p(8, 0.0);
  p[2] = 0.5;
  p[4] = 0.5;
  EXPECT_DOUBLE_EQ(second_moment(p), 1.0);  // centred
  EXPECT_DOUBLE_EQ(circular_second_moment(p, 3), 1.0);
  std::vector<double> q(8, 0.0);
  q[7] = 0.5;
  q[1] = 0.5;
  EXPECT_DOUBLE_EQ(circular_second_moment(q, 0), 1.0);  // offsets -1 and +1 across the edge
  EXPECT_DOUBLE_EQ(second_moment(q), 9.0);
  EXPECT_EQ(peak_index(p), 2u);
}

TEST(LocalizationFit, RecoversExponentialProfile) {
  for (double l : {2.0, 5.0, 12.0}) {
    const auto p = two_sided_exponential(256, 100, l);
    const auto fit = fit_localization_length(p);
    ASSERT_TRUE(fit.has_value());
    EXPECT_NEAR(*fit, l, 1e-6 * l);
  }
}

TEST(LocalizationFit, WrapsAroundTheEdge) {
  const auto p = two_sided_exponential(128, 2, 4.0);
  const auto fit = fit_localization_length(p, 20);
  ASSERT_TRUE(fit.has_value());
  EXPECT_NEAR(*fit, 4.0, 1e-6);
}

TEST(LocalizationFit, EmptyForFlatProfile) {
  EXPECT_FALSE(fit_localization_length(std::vector<double>(64, 1.0 / 64)).has_value());
}

TEST(Fidelity, OverlapSquared) {
  const auto a = new_basis_state(3, 1);
  QuantumState b = testing::random_state(3, 7);
  EXPECT_NEAR(fidelity(a, b), std::norm(b[1]), 1e-15);
  EXPECT_NEAR(fidelity(b, b), 1.0, 1e-14);
}

TEST(CoarseGrain, SumsBlocksOfTopBits) {
  std::vector<double> p(16);
  for (std::size_t i = 0; i < 16; ++i) p[i] = double(i);
  const auto c = coarse_grain(p, 2);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_DOUBLE_EQ(c[0], 0 + 1 + 2 + 3);
  EXPECT_DOUBLE_EQ(c[3], 12 + 13 + 14 + 15);
  EXPECT_EQ(coarse_grain(p, 4), p);
}

TEST(Husimi, MatchesDirectSum) {
  const auto psi = random_wave(32, 4);
  for (auto [P, Q] : {std::pair<int, int>{1, 1}, {3, 5}, {8, 8}}) {
    const auto h = husimi(psi, P, Q);
    const auto want = husimi_oracle(psi, P, Q);
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(h.values[i], want[i], 1e-12);
  }
}

TEST(Husimi, NonNegativeWithStateIndependentTotal) {
  std::vector<double> totals;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto h = husimi(random_wave(128, seed), 8, 8);
    for (double v : h.values) EXPECT_GE(v, 0.0);
    totals.push_back(h.total());
  }
  const auto [lo, hi] = std::minmax_element(totals.begin(), totals.end());
  EXPECT_LT((*hi - *lo) / *lo, 0.005);
  EXPECT_NEAR(*lo, 1.0, 0.01);
}

TEST(Husimi, PacketPeaksAtItsCentre) {
  const std::size_t N = 256;
  const auto psi = gaussian_packet(N, 8, 8, 70, 190);
  double norm = 0;
  for (auto v : psi) norm += std::norm(v);
  EXPECT_NEAR(norm, 1.0, 1e-14);
  const auto h = husimi(psi, 8, 8);
  const auto best = std::max_element(h.values.begin(), h.values.end()) - h.values.begin();
  EXPECT_EQ(static_cast<std::size_t>(best) / N, 70u);
  EXPECT_EQ(static_cast<std::size_t>(best) % N, 190u);
}

TEST(Husimi, ReducedStateSumsBranches) {
  QuantumState s = testing::random_state(6, 2, {1, 5}, 0);
  const auto h = husimi(s, 2, 1);
  std::vector<cplx> b0(32), b1(32);
  for (std::size_t n = 0; n < 32; ++n) {
    b0[n] = s[n << 1];
    b1[n] = s[(n << 1) | 1];
  }
  const auto h0 = husimi(b0, 2, 1);
  const auto h1 = husimi(b1, 2, 1);
  for (std::size_t i = 0; i < h.values.size(); ++i) EXPECT_NEAR(h.values[i], h0.values[i] + h1.values[i], 1e-14);
}

TEST(HusimiError, RelativeMeanAbsoluteDifference) {
  HusimiGrid a{2, 1, 1, {1, 2, 3, 4}, {}};
  HusimiGrid b{2, 1, 1, {1, 1, 3, 6}, {}};
  EXPECT_DOUBLE_EQ(husimi_error(b, a, {}), 3.0 / 10.0);
  const std::vector<std::uint8_t> mask{0, 1, 0, 1};
  EXPECT_DOUBLE_EQ(husimi_error(b, a, mask), 3.0 / 6.0);
  EXPECT_DOUBLE_EQ(husimi_error(a, a, {}), 0.0);
}

TEST(CrossingTime, LinearInterpolation) {
  const std::vector<double> t{0, 10, 20, 30};
  const std::vector<double> e{0.0, 0.2, 0.6, 0.9};
  EXPECT_NEAR(*crossing_time(t, e), 17.5, 1e-12);
  EXPECT_FALSE(crossing_time(t, e, 2.0).has_value());
}

TEST(Predict, HusimiTimeScale) {
  const auto p = predict(Regime::localized, 1.0, 10, 3.0, 1e-5);
  EXPECT_NEAR(p.t_h, 0.007 / (1e-5 * std::pow(10.0, 1.23)), 1e-9);
  EXPECT_NEAR(p.t_h, 41.2, 0.1);
}

TEST(Predict, Thresholds) {
  const double n_g = 500;
  const auto loc = predict(Regime::localized, n_g, 9, 4.0, 1e-6);
  EXPECT_NEAR(loc.epsilon_c, 0.3 / (n_g * 3.0), 1e-15);
  EXPECT_NEAR(loc.sigma, 1e-6 * n_g * 3.0, 1e-15);
  EXPECT_NEAR(loc.v_typ, loc.sigma / 2.0, 1e-15);
  EXPECT_NEAR(loc.gamma, kTwoPi * loc.v_typ * loc.v_typ / loc.delta_c, 1e-15);
  const auto del = predict(Regime::partially_delocalized, n_g, 10, 0.0, 1e-6);
  EXPECT_NEAR(del.epsilon_c, 7.4 / (n_g * std::sqrt(10.0) * 32.0), 1e-15);
  EXPECT_NEAR(del.delta_n, 1.0 / 1024, 1e-18);
  // two more qubits halve the delocalized threshold, up to the sqrt(n_q) factor
  const auto del2 = predict(Regime::partially_delocalized, n_g, 12, 0.0, 1e-6);
  EXPECT_NEAR(del.epsilon_c / del2.epsilon_c, 2.0 * std::sqrt(12.0 / 10.0), 1e-12);
  EXPECT_THROW(predict(Regime::localized, n_g, 9, 0.0, 1e-6), std::invalid_argument);
}

}  // namespace
}  // namespace kharper

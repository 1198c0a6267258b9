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

#include "kharper/harper_model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "kharper/parallel.hpp"

namespace kharper {
namespace {

double reduce(double value, double extent) {
  if (extent <= 0) return value;
  double r = std::fmod(value, extent);
  if (r < 0) r += extent;
  if (r >= extent) r -= extent;  // fmod of values just below zero
  return r;
}

// cos(2 pi p n / N) with the argument reduced exactly in integers.
std::vector<double> cosine_table(std::uint64_t dimension, std::uint64_t multiplier) {
  std::vector<double> table(dimension);
  for (std::uint64_t n = 0; n < dimension; ++n) {
    const std::uint64_t k = (multiplier % dimension) * n % dimension;
    table[n] = std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(dimension));
  }
  return table;
}

void apply_cosine_kick(QuantumState& state, double strength, std::uint64_t multiplier,
                       std::optional<int> precision_bits) {
  const QubitRange sys = state.system();
  const std::uint64_t dim = std::uint64_t{1} << sys.count;
  const auto cosines = cosine_table(dim, multiplier);
  std::vector<cplx> phase(dim);
  for (std::uint64_t n = 0; n < dim; ++n) {
    phase[n] = std::polar(1.0, -strength * round_fixed_point(cosines[n], precision_bits));
  }
  auto amp = state.amplitudes();
  for (std::uint64_t x = 0; x < amp.size(); ++x) amp[x] *= phase[sys.extract(x)];
}

void check_register(const QuantumState& state, const HarperParams& params) {
  if (state.system().count != params.n_r) {
    throw std::invalid_argument("state system register has " + std::to_string(state.system().count) +
                                " qubits, parameters expect n_r=" + std::to_string(params.n_r));
  }
}

}  // namespace

void HarperParams::validate() const {
  if (n_r < 1 || n_r > 26) throw std::invalid_argument("n_r must lie in [1, 26], got " + std::to_string(n_r));
  if (!std::isfinite(K)) throw std::invalid_argument("K must be finite");
  if (!std::isfinite(L)) throw std::invalid_argument("L must be finite");
  if (m < 1 || m >= dimension()) {
    throw std::invalid_argument("m must satisfy 1 <= m < N_H, got m=" + std::to_string(m));
  }
  if (P < 1 || Q < 1 || P * Q != m) {
    throw std::invalid_argument("cell counts must satisfy P*Q = m (P=" + std::to_string(P) +
                                ", Q=" + std::to_string(Q) + ", m=" + std::to_string(m) + ")");
  }
}

HarperParams HarperParams::cylinder(double K, double L, int n_r, std::uint64_t m) {
  HarperParams p{K, L, n_r, m, m, 1};
  p.validate();
  return p;
}

HarperParams HarperParams::torus(double K, double L, int n_r, std::uint64_t P, std::uint64_t Q) {
  HarperParams p{K, L, n_r, P * Q, P, Q};
  p.validate();
  return p;
}

double golden_hbar_fraction() { return (13.0 - std::sqrt(5.0)) / 82.0; }

HbarFraction split_power_of_two(std::uint64_t p) {
  if (p == 0) throw std::invalid_argument("cannot factor zero");
  HbarFraction f{p, 0, p};
  while (f.odd % 2 == 0) {
    f.odd /= 2;
    ++f.power_of_two;
  }
  return f;
}

HbarFraction nearest_hbar(int n_r, double target) {
  if (!(target > 0 && target < 1)) throw std::invalid_argument("hbar/2pi must lie in (0, 1)");
  if (n_r < 1 || n_r > 62) throw std::invalid_argument("n_r out of range");
  const double scaled = target * std::ldexp(1.0, n_r);
  const auto m = static_cast<std::uint64_t>(std::floor(scaled + 0.5));
  if (m == 0) throw std::invalid_argument("hbar too small for a " + std::to_string(n_r) + "-qubit register");
  if (m >= (std::uint64_t{1} << n_r)) throw std::invalid_argument("hbar rounds to 2 pi");
  return split_power_of_two(m);
}

double round_fixed_point(double value, std::optional<int> bits) {
  if (!bits) return value;
  const double scale = std::ldexp(1.0, *bits);
  return std::nearbyint(value * scale) / scale;
}

void exact_kick_theta(QuantumState& state, const HarperParams& params, std::optional<int> precision_bits) {
  check_register(state, params);
  apply_cosine_kick(state, params.K / params.hbar(), params.theta_multiplier(), precision_bits);
}

void exact_kick_momentum(QuantumState& state, const HarperParams& params,
                         std::optional<int> precision_bits) {
  check_register(state, params);
  apply_cosine_kick(state, params.L / params.hbar(), params.momentum_multiplier(), precision_bits);
}

void exact_step(QuantumState& state, const HarperParams& params) { exact_step(state, params, std::nullopt); }

void exact_step(QuantumState& state, const HarperParams& params, std::optional<int> precision_bits) {
  exact_kick_theta(state, params, precision_bits);
  apply_qft(state, state.system(), false);
  exact_kick_momentum(state, params, precision_bits);
  apply_qft(state, state.system(), true);
}

std::int64_t exact_gate_count(int n_r, int precision_bits) {
  if (precision_bits < n_r) throw std::invalid_argument("precision bits must be at least n_r");
  const std::int64_t n = n_r;
  return kExactCubicConstant * n * n * precision_bits + 2 * qft_gate_count(n_r) + 2 * std::int64_t{precision_bits};
}

ClassicalPoint classical_map_step(ClassicalPoint point, double K, double L, const PhaseSpaceExtent& extent) {
  const double I = point.I + K * std::sin(point.theta);
  const double theta = point.theta - L * std::sin(I);
  return {reduce(I, extent.momentum), reduce(theta, extent.angle)};
}

double DensityGrid::total() const {
  double s = 0;
  for (double c : counts) s += c;
  return s;
}

DensityGrid histogram(std::span<const ClassicalPoint> points, int momentum_bins, int angle_bins,
                      const PhaseSpaceExtent& extent) {
  if (momentum_bins < 1 || angle_bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  if (extent.momentum <= 0 || extent.angle <= 0) throw std::invalid_argument("histogram needs a finite extent");
  DensityGrid grid{momentum_bins, angle_bins, extent,
                   std::vector<double>(static_cast<std::size_t>(momentum_bins) * angle_bins, 0.0)};
  for (const auto& p : points) {
    const double I = reduce(p.I, extent.momentum);
    const double th = reduce(p.theta, extent.angle);
    const int row = std::min(momentum_bins - 1, static_cast<int>(I / extent.momentum * momentum_bins));
    const int col = std::min(angle_bins - 1, static_cast<int>(th / extent.angle * angle_bins));
    grid.at(row, col) += 1.0;
  }
  return grid;
}

std::vector<ClassicalPoint> gaussian_cloud(std::size_t count, ClassicalPoint center, double sigma,
                                           const PhaseSpaceExtent& extent, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  std::vector<ClassicalPoint> points(count);
  for (auto& p : points) {
    const double I = center.I + gauss(rng);
    const double th = center.theta + gauss(rng);
    p = {reduce(I, extent.momentum), reduce(th, extent.angle)};
  }
  return points;
}

DensityGrid classical_ensemble_evolve(std::vector<ClassicalPoint>& points, int steps, double K, double L,
                                      const PhaseSpaceExtent& extent, int momentum_bins, int angle_bins,
                                      int threads) {
  if (steps < 0) throw std::invalid_argument("step count must be non-negative");
  const std::size_t chunk = 4096;
  const std::size_t chunks = (points.size() + chunk - 1) / chunk;
  run_jobs(chunks, threads, [&](std::size_t c) {
    const std::size_t end = std::min(points.size(), (c + 1) * chunk);
    for (std::size_t i = c * chunk; i < end; ++i) {
      ClassicalPoint p = points[i];
      for (int t = 0; t < steps; ++t) p = classical_map_step(p, K, L, extent);
      points[i] = p;
    }
  });
  return histogram(points, momentum_bins, angle_bins, extent);
}

}  // namespace kharper

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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kharper/statevector.hpp"

namespace kharper {

/// Parameters of the kicked Harper map on an N_H = 2^n_r dimensional space.
///
/// hbar is stored as the integer m with hbar = 2 pi m / N_H, never as a
/// rounded float. The phase space is a torus of Q cells along theta and P
/// cells along the momentum, m = P * Q. The cylinder geometry used for
/// transport runs is Q = 1, P = m.
///
/// Position grid: theta_j = 2 pi Q j / N_H. Momentum grid: I_n = 2 pi P n / N_H.
/// The theta kick therefore acts with multiplier p = Q and the momentum kick
/// with p = P.
struct HarperParams {
  double K = 0.0;
  double L = 0.0;
  int n_r = 0;
  std::uint64_t m = 1;
  std::uint64_t P = 1;
  std::uint64_t Q = 1;

  std::uint64_t dimension() const { return std::uint64_t{1} << n_r; }
  double hbar() const { return kTwoPi * static_cast<double>(m) / static_cast<double>(dimension()); }
  std::uint64_t theta_multiplier() const { return Q; }
  std::uint64_t momentum_multiplier() const { return P; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  static HarperParams cylinder(double K, double L, int n_r, std::uint64_t m);
  static HarperParams torus(double K, double L, int n_r, std::uint64_t P, std::uint64_t Q);
};

/// (13 - sqrt 5) / 82, the default hbar / 2 pi for transport runs.
double golden_hbar_fraction();

struct HbarFraction {
  std::uint64_t m = 0;
  int power_of_two = 0;  // m = 2^power_of_two * odd
  std::uint64_t odd = 0;
};

/// m = round(target * 2^n_r), ties rounded up; rejects m == 0 or m >= N_H.
HbarFraction nearest_hbar(int n_r, double target);

/// Splits p = 2^a * odd.
HbarFraction split_power_of_two(std::uint64_t p);

/// Fixed-point rounding to `bits` fractional bits; nullopt keeps full precision.
double round_fixed_point(double value, std::optional<int> bits);

/// exp(-i K round(cos theta_j) / hbar) on the system register (theta representation).
void exact_kick_theta(QuantumState& state, const HarperParams& params, std::optional<int> precision_bits);

/// exp(-i L round(cos(2 pi P n / N_H)) / hbar) on the system register (momentum representation).
void exact_kick_momentum(QuantumState& state, const HarperParams& params,
                         std::optional<int> precision_bits);

/// One Floquet period at full precision: theta kick, QFT, momentum kick, inverse QFT.
void exact_step(QuantumState& state, const HarperParams& params);

/// Same composition with the cosine values rounded to `precision_bits`, the
/// output of the ancilla-register circuit once its workspace is uncomputed.
void exact_step(QuantumState& state, const HarperParams& params, std::optional<int> precision_bits);

/// Constant of the cubic term in exact_gate_count.
inline constexpr std::int64_t kExactCubicConstant = 4;

/// Modeled gates per iteration of the register-based algorithm:
/// c3 n_r^2 n_p + 2 QFT + 2 n_p, with c3 = 4 (compute and uncompute of the
/// real and imaginary parts of the cosine register).
std::int64_t exact_gate_count(int n_r, int precision_bits);

// Classical map.

struct ClassicalPoint {
  double I = 0.0;
  double theta = 0.0;
};

/// Extent of the classical phase space; a non-positive extent leaves that
/// coordinate unreduced.
struct PhaseSpaceExtent {
  double momentum = kTwoPi;
  double angle = kTwoPi;

  static PhaseSpaceExtent cells(std::uint64_t P, std::uint64_t Q) {
    return {kTwoPi * static_cast<double>(P), kTwoPi * static_cast<double>(Q)};
  }
};

/// I' = I + K sin(theta), theta' = theta - L sin(I'), both reduced modulo the extent.
ClassicalPoint classical_map_step(ClassicalPoint point, double K, double L, const PhaseSpaceExtent& extent);

/// Occupancy histogram; row index runs along the momentum, column along theta.
struct DensityGrid {
  int momentum_bins = 0;
  int angle_bins = 0;
  PhaseSpaceExtent extent;
  std::vector<double> counts;

  double& at(int row, int col) { return counts[static_cast<std::size_t>(row) * angle_bins + col]; }
  double at(int row, int col) const { return counts[static_cast<std::size_t>(row) * angle_bins + col]; }
  double total() const;
};

DensityGrid histogram(std::span<const ClassicalPoint> points, int momentum_bins, int angle_bins,
                      const PhaseSpaceExtent& extent);

/// Gaussian cloud with independent coordinates, folded onto the extent.
std::vector<ClassicalPoint> gaussian_cloud(std::size_t count, ClassicalPoint center, double sigma,
                                           const PhaseSpaceExtent& extent, std::uint64_t seed);

/// Advances every point `steps` times and returns the occupancy histogram.
/// Points are split over `threads` workers; the merged grid does not depend
/// on the worker count.
DensityGrid classical_ensemble_evolve(std::vector<ClassicalPoint>& points, int steps, double K, double L,
                                      const PhaseSpaceExtent& extent, int momentum_bins, int angle_bins,
                                      int threads = 1);

}  // namespace kharper

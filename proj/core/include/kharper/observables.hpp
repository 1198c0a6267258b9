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

#include "kharper/harper_model.hpp"
#include "kharper/statevector.hpp"

namespace kharper {

/// Probabilities over the system register with every other qubit traced out.
std::vector<double> momentum_distribution(const QuantumState& state);

/// xi = 1 / sum p^2. Throws on an all-zero distribution.
double ipr(std::span<const double> p);

/// Centred second moment (variance) of the index n.
double second_moment(std::span<const double> p);

/// Variance of the displacement from `origin`, wrapped to [-N/2, N/2).
double circular_second_moment(std::span<const double> p, std::size_t origin);

/// Index of the largest entry, lowest index on ties.
std::size_t peak_index(std::span<const double> p);

/// p(n) ~ exp(-2 |n - n_max| / l): least-squares slope of log p on each flank of
/// the peak inside +-window (circular), points below `floor` ignored, l from the
/// mean flank slope. Empty when fewer than four points are usable or the
/// profile does not decay.
std::optional<double> fit_localization_length(std::span<const double> p, int window, double floor = 1e-14);

/// Same, with window max(8, 4 xi) capped at N/2 - 1.
std::optional<double> fit_localization_length(std::span<const double> p);

double fidelity(const QuantumState& a, const QuantumState& b);

/// Sum of p over the 2^(n_r-k) states sharing the top k bits.
std::vector<double> coarse_grain(std::span<const double> p, int k);

/// Husimi density h(theta, n) on an N_H x N_H grid: row n is the momentum
/// index, column t the angle theta = 2 pi Q t / N_H.
struct HusimiGrid {
  std::size_t size = 0;
  std::uint64_t P = 1;
  std::uint64_t Q = 1;
  std::vector<double> values;
  std::vector<std::uint8_t> mask;  // empty, or one flag per grid point

  double at(std::size_t n, std::size_t t) const { return values[n * size + t]; }
  double total() const;
};

/// Gaussian-smoothed density of a momentum-representation wave function:
/// sqrt(2P/(Q N^3)) |sum_d psi(n+d) exp(-pi P d^2/(N Q)) exp(-2 pi i d t/N)|^2,
/// d in (-N/2, N/2]. The sum over the grid is 1 up to the gaussian truncation.
HusimiGrid husimi(std::span<const cplx> psi, std::uint64_t P, std::uint64_t Q);

/// Husimi density of the reduced system state: one term per configuration of
/// the other qubits. `momentum_state` must be in momentum representation.
HusimiGrid husimi(const QuantumState& momentum_state, std::uint64_t P, std::uint64_t Q);

/// Grid points whose classical density exceeds the median positive density.
std::vector<std::uint8_t> web_mask(const DensityGrid& classical, std::size_t grid_size);

/// <|h_eps - h_0|> / <h_0> over the mask (whole grid when `mask` is empty).
double husimi_error(const HusimiGrid& h_eps, const HusimiGrid& h0, std::span<const std::uint8_t> mask);

/// First time at which `errors` reaches `level`, interpolated linearly between samples.
std::optional<double> crossing_time(std::span<const double> times, std::span<const double> errors,
                                    double level = 0.5);

/// Momentum amplitudes of a minimum-uncertainty packet centred at momentum
/// index n0 and angle index t0 (theta_0 = 2 pi Q t0 / N), normalized.
std::vector<cplx> gaussian_packet(std::size_t dimension, std::uint64_t P, std::uint64_t Q, double n0, double t0);

enum class Regime { localized, partially_delocalized };

struct ScalingConstants {
  double c1_over_sqrt_l = 0.3;
  double c2 = 7.4;
  double c_h = 0.007;
  double alpha = 1.0;
  double beta = 1.23;
};

struct ScalingPrediction {
  Regime regime = Regime::localized;
  double epsilon_c = 0.0;
  double t_h = 0.0;
  double v_typ = 0.0;
  double sigma = 0.0;
  double delta_c = 0.0;
  double delta_n = 0.0;
  double gamma = 0.0;
};

/// Threshold and time-scale estimates. `l` is used in the localized regime,
/// the Hilbert-space dimension N = 2^n_q in the partially delocalized one.
ScalingPrediction predict(Regime regime, double n_g, int n_q, double l, double epsilon,
                          const ScalingConstants& constants = {});

}  // namespace kharper

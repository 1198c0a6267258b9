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

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kharper/statevector.hpp"

namespace kharper {

using StepFunction = std::function<void(QuantumState&)>;

/// Column j is the system block of step(|j>): every qubit outside the system
/// register starts in |0> and only the all-zero component of those qubits is
/// kept. `prototype` fixes the state layout. Columns are built in parallel.
Eigen::MatrixXcd build_unitary(const QuantumState& prototype, const StepFunction& step, int threads = 1);

struct EigenphaseSet {
  std::vector<double> phases;      // sorted, in (-pi, pi]
  double max_modulus_deviation = 0.0;  // max | |lambda| - 1 |
  double offset = 0.0;
  std::string method;
};

/// Arguments of the eigenvalues, normalized to the unit circle.
EigenphaseSet eigenphases(const Eigen::MatrixXcd& matrix, std::string method = {});

struct EigenDecomposition {
  std::vector<double> phases;  // unsorted, matching the columns of `vectors`
  Eigen::MatrixXcd vectors;    // unit columns
};

EigenDecomposition eigen_decomposition(const Eigen::MatrixXcd& matrix);

struct SpectralPeak {
  double phase = 0.0;
  double weight = 0.0;
};

struct TimeSeriesSpectrum {
  std::vector<cplx> autocorrelation;  // <psi0|psi(t)>, t = 0..T-1
  std::vector<double> power;          // |windowed transform| on the grid 2 pi k / T
  std::vector<SpectralPeak> peaks;
};

/// Peaks of the Hann-windowed transform of the autocorrelation, located by
/// quadratic interpolation; only local maxima above `relative_threshold` times
/// the largest one are kept.
TimeSeriesSpectrum time_series_spectrum(const QuantumState& psi0, const StepFunction& step, int iterations,
                                        double relative_threshold = 0.05);

inline constexpr int kPhaseEstimationQubitCap = 24;

/// Exact outcome distribution of the time register for
/// 2^{-n_t/2} sum_t |t> U^t |psi0> followed by an inverse QFT on |t>.
std::vector<double> phase_estimation(const QuantumState& psi0, const StepFunction& step, int time_qubits,
                                     int qubit_cap = kPhaseEstimationQubitCap);

/// |sum_t exp(i delta t)|^2 / T^2 for delta = phase - 2 pi k / T.
double fejer_probability(double phase, int bin, int time_qubits);

struct SpectralComparison {
  double mean_error = 0.0;  // mean |Delta E| in units of 2 pi / N
  double offset = 0.0;      // removed global phase
  int shift = 0;            // cyclic index shift of the matching
};

/// Matches sorted eigenphases up to a cyclic index shift and a global phase
/// (circular mean), choosing the shift with the smallest mean error.
SpectralComparison align_and_compare(const EigenphaseSet& perturbed, const EigenphaseSet& reference);

/// Mean error between the spectrum and its mirror image E -> -E.
SpectralComparison mirror_asymmetry(const EigenphaseSet& set);

double wrap_angle(double phase);

}  // namespace kharper

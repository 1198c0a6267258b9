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

#include "kharper/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "fft_plan.hpp"
#include "kharper/parallel.hpp"

namespace kharper {

double wrap_angle(double phase) {
  double r = std::remainder(phase, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

Eigen::MatrixXcd build_unitary(const QuantumState& prototype, const StepFunction& step, int threads) {
  const QubitRange sys = prototype.system();
  const std::size_t dim = std::size_t{1} << sys.count;
  Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  run_jobs(dim, threads, [&](std::size_t j) {
    QuantumState state(prototype.num_qubits(), sys, prototype.ancilla());
    state[0] = 0;
    state[j << sys.first] = 1;
    step(state);
    for (std::size_t i = 0; i < dim; ++i) {
      u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = state[i << sys.first];
    }
  });
  return u;
}

EigenphaseSet eigenphases(const Eigen::MatrixXcd& matrix, std::string method) {
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("eigenphases need a square matrix");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(matrix, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver did not converge");
  EigenphaseSet set;
  set.method = std::move(method);
  for (const auto& lambda : solver.eigenvalues()) {
    set.phases.push_back(std::arg(lambda));
    set.max_modulus_deviation = std::max(set.max_modulus_deviation, std::abs(std::abs(lambda) - 1.0));
  }
  std::sort(set.phases.begin(), set.phases.end());
  return set;
}

EigenDecomposition eigen_decomposition(const Eigen::MatrixXcd& matrix) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(matrix, true);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver did not converge");
  EigenDecomposition out;
  out.vectors = solver.eigenvectors();
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    out.vectors.col(c).normalize();
    out.phases.push_back(std::arg(solver.eigenvalues()(c)));
  }
  return out;
}

TimeSeriesSpectrum time_series_spectrum(const QuantumState& psi0, const StepFunction& step, int iterations,
                                        double relative_threshold) {
  if (iterations < 3) throw std::invalid_argument("time series needs at least three iterations");
  const auto T = static_cast<std::size_t>(iterations);
  TimeSeriesSpectrum out;
  QuantumState state = psi0;
  for (std::size_t t = 0; t < T; ++t) {
    out.autocorrelation.push_back(inner_product(psi0, state));
    if (t + 1 < T) step(state);
  }
  std::vector<cplx> windowed(T);
  for (std::size_t t = 0; t < T; ++t) {
    const double hann = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(t) / static_cast<double>(T)));
    windowed[t] = out.autocorrelation[t] * hann / static_cast<double>(T);
  }
  detail::dft(windowed, -1);
  out.power.resize(T);
  for (std::size_t k = 0; k < T; ++k) out.power[k] = std::abs(windowed[k]);
  const double top = *std::max_element(out.power.begin(), out.power.end());
  for (std::size_t k = 0; k < T; ++k) {
    const double a = out.power[(k + T - 1) % T];
    const double b = out.power[k];
    const double c = out.power[(k + 1) % T];
    if (!(b > a && b >= c) || b < relative_threshold * top) continue;
    const double denom = a - 2 * b + c;
    const double delta = denom != 0 ? 0.5 * (a - c) / denom : 0.0;
    const double height = b - 0.25 * (a - c) * delta;
    out.peaks.push_back({wrap_angle(kTwoPi * (static_cast<double>(k) + delta) / static_cast<double>(T)),
                         height / 0.5});  // Hann coherent gain
  }
  return out;
}

std::vector<double> phase_estimation(const QuantumState& psi0, const StepFunction& step, int time_qubits,
                                     int qubit_cap) {
  if (time_qubits < 1) throw std::invalid_argument("phase estimation needs at least one time qubit");
  const int work = psi0.num_qubits();
  if (work + time_qubits > qubit_cap) {
    throw std::length_error("phase estimation needs " + std::to_string(work + time_qubits) +
                            " simulated qubits, above the cap of " + std::to_string(qubit_cap));
  }
  const std::size_t T = std::size_t{1} << time_qubits;
  const std::size_t W = psi0.dimension();
  QuantumState joint(work + time_qubits, QubitRange{work, time_qubits});
  auto amp = joint.amplitudes();
  amp[0] = 0;
  const double scale = 1.0 / std::sqrt(static_cast<double>(T));
  QuantumState cur = psi0;
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t w = 0; w < W; ++w) amp[(t * W) | w] = cur[w] * scale;
    if (t + 1 < T) step(cur);
  }
  apply_qft(joint, QubitRange{work, time_qubits}, true);
  std::vector<double> hist(T, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t w = 0; w < W; ++w) hist[t] += std::norm(amp[(t * W) | w]);
  }
  return hist;
}

double fejer_probability(double phase, int bin, int time_qubits) {
  const double T = std::ldexp(1.0, time_qubits);
  const double delta = phase - kTwoPi * bin / T;
  const double s = std::sin(delta / 2);
  if (std::abs(s) < 1e-15) return 1.0;
  const double num = std::sin(T * delta / 2);
  return num * num / (T * T * s * s);
}

SpectralComparison align_and_compare(const EigenphaseSet& perturbed, const EigenphaseSet& reference) {
  const std::size_t n = reference.phases.size();
  if (perturbed.phases.size() != n) throw std::invalid_argument("eigenphase sets differ in size");
  if (n == 0) throw std::invalid_argument("empty eigenphase set");
  SpectralComparison best{std::numeric_limits<double>::infinity(), 0.0, 0};
  std::vector<double> d(n);
  for (std::size_t s = 0; s < n; ++s) {
    cplx mean{};
    for (std::size_t a = 0; a < n; ++a) {
      d[a] = wrap_angle(perturbed.phases[(a + s) % n] - reference.phases[a]);
      mean += std::polar(1.0, d[a]);
    }
    const double offset = std::abs(mean) > 0 ? std::arg(mean) : 0.0;
    double err = 0;
    for (std::size_t a = 0; a < n; ++a) err += std::abs(wrap_angle(d[a] - offset));
    err /= static_cast<double>(n);
    if (err < best.mean_error) best = {err, offset, static_cast<int>(s)};
  }
  best.mean_error /= kTwoPi / static_cast<double>(n);
  return best;
}

SpectralComparison mirror_asymmetry(const EigenphaseSet& set) {
  EigenphaseSet mirrored = set;
  for (auto& e : mirrored.phases) e = wrap_angle(-e);
  std::sort(mirrored.phases.begin(), mirrored.phases.end());
  return align_and_compare(mirrored, set);
}

}  // namespace kharper

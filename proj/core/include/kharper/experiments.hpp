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
#include <string>
#include <vector>

#include "kharper/config.hpp"
#include "kharper/observables.hpp"
#include "kharper/spectrum.hpp"

namespace kharper {

struct ObservableRow {
  std::uint64_t seed = 0;
  int realization = 0;
  double epsilon = 0.0;
  int t = 0;
  std::int64_t n_g = 0;
  double norm = 1.0;
  std::optional<double> ipr;
  std::optional<double> second_moment;  // about the initial momentum, wrapped
  std::optional<double> localization_length;
  std::optional<double> fidelity;
};

struct RunRecord {
  std::string config_ini;
  double epsilon = 0.0;
  int realization = 0;
  std::uint64_t seed = 0;  // realization seed of the disorder
  std::int64_t n_g = 0;
  std::vector<ObservableRow> rows;
  std::vector<double> final_distribution;
  double wall_seconds = 0.0;
};

/// Recorded times: 0, every `record_every`, and the final iteration.
std::vector<int> record_times(int iterations, int record_every);

/// Initial momentum amplitudes of a run.
std::vector<cplx> initial_momentum_state(const ExperimentConfig& config);

/// One record per (epsilon, realization); a noiseless epsilon runs once.
/// Records come back ordered by epsilon index, then realization,
/// independent of the worker count.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

/// Mean IPR over rows with t >= fraction * final time.
double saturation_ipr(const RunRecord& record, double fraction = 0.75);

struct ButterflyPoint {
  std::uint64_t m = 0;
  double hbar = 0.0;
  EigenphaseSet phases;
};

/// Floquet eigenphases for hbar = 2 pi m / 2^n_r on the cylinder.
std::vector<ButterflyPoint> butterfly_scan(int n_r, double K, double L, const std::vector<std::uint64_t>& ms,
                                           const MethodConfig& method, int threads);

/// Floquet matrix of the stepper's system block, angle representation.
Eigen::MatrixXcd floquet_matrix(const FloquetStepper& stepper, int threads = 1);

/// Mean over Floquet eigenstates of their momentum-basis IPR.
double mean_eigenstate_ipr(const Eigen::MatrixXcd& floquet_theta);

struct KLPoint {
  double K = 0.0;
  double L = 0.0;
  double mean_ipr = 0.0;
};

std::vector<KLPoint> sweep_kl(const std::vector<double>& Ks, const std::vector<double>& Ls, int n_r,
                              std::uint64_t m, int threads);

struct TransitionScan {
  std::vector<double> K;
  std::vector<double> mean_ipr;
  std::optional<double> K_c;  // IPR crosses N_H / 4
};

/// IPR after `base.iterations` for every K, averaged over realizations at the
/// single noise strength `epsilon`.
TransitionScan transition_scan(const ExperimentConfig& base, const std::vector<double>& Ks, double epsilon);

/// First upward crossing of `level`, interpolated linearly.
std::optional<double> upward_crossing(const std::vector<double>& x, const std::vector<double>& y, double level);

struct EpsilonCScan {
  std::vector<double> epsilons;
  std::vector<double> saturation_ipr;
  double reference_ipr = 0.0;
  std::optional<double> epsilon_c;  // saturation IPR reaches twice the reference
};

EpsilonCScan epsilon_c_scan(const ExperimentConfig& base, const std::vector<double>& epsilons);

struct WebStudy {
  std::vector<int> times;
  std::vector<double> husimi_error;  // mean over realizations
  std::optional<double> t_h;
  HusimiGrid ideal_final;
  HusimiGrid noisy_final;  // first realization
  std::vector<std::uint8_t> mask;
};

/// Classical density on the stochastic web after `steps` iterations of a
/// gaussian cloud started at the packet centre of `params`.
DensityGrid classical_web_density(const HarperParams& params, std::size_t particles, int steps, int threads,
                                  std::uint64_t seed);

/// Husimi error on the web mask over time for a packet started half a cell
/// above the centre; base.iterations is the horizon.
WebStudy web_study(const ExperimentConfig& base, double epsilon, const std::vector<int>& times,
                   const std::vector<std::uint8_t>& mask);

/// Centre of the web packet in grid units: momentum index and angle index.
std::pair<double, double> web_packet_centre(const HarperParams& params);

/// Least-squares slope of log10 y against log10 x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::vector<double> logspace(double lo_exponent, double hi_exponent, int count);

}  // namespace kharper

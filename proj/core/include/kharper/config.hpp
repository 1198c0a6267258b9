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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "kharper/evolution.hpp"
#include "kharper/harper_model.hpp"

namespace kharper {

enum class OutputFormat { csv, ndjson };
enum class InitialState { zero, packet };

OutputFormat parse_format(const std::string& name);
std::string to_string(OutputFormat format);

/// Everything a run needs. Loaded from an INI file:
///
///   [model]   K, L, n_r, m | hbar, geometry = cylinder | torus, P, Q
///   [method]  name, n_slices, symmetrized, degree, samples, threshold, precision_bits
///   [run]     iterations, record_every, epsilons (comma list), realizations, seed,
///             initial = zero | packet, packet_n0, packet_t0, observables
///   [output]  out_dir, format = csv | ndjson, threads
///
/// `hbar` is the target hbar/2pi, rounded to the nearest m/2^n_r.
struct ExperimentConfig {
  HarperParams params;
  MethodConfig method;
  int iterations = 100;
  int record_every = 0;  // 0: initial and final time only
  std::vector<double> epsilons{0.0};
  int realizations = 1;
  std::uint64_t seed = 1;
  InitialState initial = InitialState::zero;
  double packet_n0 = 0.0;
  double packet_t0 = 0.0;
  std::vector<std::string> observables{"ipr", "second_moment", "localization_length", "fidelity"};
  std::string out_dir = "out";
  OutputFormat format = OutputFormat::csv;
  int threads = 1;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  bool wants(const std::string& observable) const;
};

inline const std::vector<std::string>& known_observables() {
  static const std::vector<std::string> names{"ipr", "second_moment", "localization_length", "fidelity"};
  return names;
}

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string to_ini(const ExperimentConfig& config);

std::vector<double> parse_number_list(const std::string& text);

}  // namespace kharper

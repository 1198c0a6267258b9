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
#include <utility>
#include <vector>

#include "kharper/statevector.hpp"

namespace kharper {

/// One realization of H_1 = sum_i (Delta_0 + delta_i) Z_i + sum_i J_i X_i X_{i+1}
/// on a circular chain, acting for tau_g after every gate.
struct StaticDisorder {
  int n_q = 0;
  std::vector<double> detuning;  // delta_i
  std::vector<double> coupling;  // J_i couples qubit i and i+1 (mod n_q)
  double delta0 = 0.0;
  double tau_g = 1.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;

  /// Coupled pairs: none for one qubit, a single pair for two, a closed ring otherwise.
  std::vector<std::pair<int, int>> bonds() const;
  bool is_identity() const;
};

/// Seed of realization `index` derived from a master seed.
std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index);

/// delta_i, J_i uniform in [-eps/2, eps/2] (tau_g = 1).
StaticDisorder sample_disorder(int n_q, double epsilon, std::uint64_t seed);

/// exp(-i H_1 tau_g) by Strang splitting exp(-i H_z tau/2) exp(-i H_xx tau) exp(-i H_z tau/2).
void apply_imperfection(QuantumState& state, const StaticDisorder& disorder);

/// Precomputed tables for repeated application of the channel.
class ImperfectionChannel {
 public:
  explicit ImperfectionChannel(StaticDisorder disorder);

  const StaticDisorder& disorder() const { return disorder_; }
  bool trivial() const { return trivial_; }

  void apply(QuantumState& state) const;

  /// Applies every gate followed by `gate_cost` channel steps. Adjacent half
  /// steps of H_z are merged and folded into diagonal gates; the result equals
  /// the literal gate/channel alternation.
  void apply_sequence(QuantumState& state, const GateSequence& sequence) const;

 private:
  void check(const QuantumState& state) const;
  void multiply(std::span<cplx> amp, const std::vector<cplx>& table) const;
  void apply_couplings(std::span<cplx> amp) const;

  StaticDisorder disorder_;
  bool trivial_ = true;
  std::vector<cplx> half_z_;
  std::vector<cplx> full_z_;
  struct Bond {
    std::size_t mask;
    std::size_t low_bit;
    double c;
    double s;
  };
  std::vector<Bond> bonds_;
};

/// Gate, imperfection, gate, imperfection, ...
void noisy_apply(QuantumState& state, const GateSequence& sequence, const StaticDisorder& disorder);

}  // namespace kharper
